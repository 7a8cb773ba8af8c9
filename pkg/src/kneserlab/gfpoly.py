"""Dense univariate polynomial arithmetic over GF(p).

Polynomials are tuples of ints in [0, p), little-endian (index i holds the
coefficient of x^i), with no trailing zeros; () is the zero polynomial.
"""

from __future__ import annotations

from .errors import DivisionByZero, NotPrime, ReducibleModulus

Poly = tuple  # tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def trim(coeffs) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(a: Poly) -> int:
    """Degree, with degree(0) = -1."""
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] = (c[i] + x) % p
    return trim(c)


def neg(a: Poly, p: int) -> Poly:
    return tuple((-x) % p for x in a)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, neg(b, p), p)


def scale(a: Poly, k: int, p: int) -> Poly:
    k %= p
    if k == 0:
        return ZERO
    return tuple((x * k) % p for x in a)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ZERO
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] = (c[i + j] + x * y) % p
    return trim(c)


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return ZERO
    lc = a[-1]
    if lc == 1:
        return a
    return scale(a, pow(lc, p - 2, p), p)


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return ZERO, a
    inv_lc = pow(b[-1], p - 2, p)
    rem = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        coef = (rem[shift + len(b) - 1] * inv_lc) % p
        if coef:
            q[shift] = coef
            for i, y in enumerate(b):
                rem[shift + i] = (rem[shift + i] - coef * y) % p
    return trim(q), trim(rem)


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def ext_gcd(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Return (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = a, b
    u0, u1 = ONE, ZERO
    v0, v1 = ZERO, ONE
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, sub(u0, mul(q, u1, p), p)
        v0, v1 = v1, sub(v0, mul(q, v1, p), p)
    if r0:
        lc_inv = pow(r0[-1], p - 2, p)
        r0 = scale(r0, lc_inv, p)
        u0 = scale(u0, lc_inv, p)
        v0 = scale(v0, lc_inv, p)
    return r0, u0, v0


def inverse_mod(a: Poly, f: Poly, p: int) -> Poly:
    """Inverse of a modulo f; f must be irreducible for this to always exist."""
    a = mod(a, f, p)
    if not a:
        raise DivisionByZero("inverse of zero in quotient ring")
    g, u, _ = ext_gcd(a, f, p)
    if g != ONE:
        raise DivisionByZero(f"element is not invertible modulo {f!r}")
    return mod(u, f, p)


def pow_mod(a: Poly, e: int, f: Poly, p: int) -> Poly:
    result = mod(ONE, f, p)
    base = mod(a, f, p)
    while e > 0:
        if e & 1:
            result = mod(mul(result, base, p), f, p)
        base = mod(mul(base, base, p), f, p)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly, p: int) -> bool:
    """Rabin's irreducibility test over GF(p)."""
    d = degree(f)
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:  # divisible by x
        return False
    # x^(p^d) == x (mod f)
    xq = X
    for _ in range(d):
        xq = pow_mod(xq, p, f, p)
    if xq != mod(X, f, p):
        return False
    for q in _prime_factors(d):
        xq = X
        for _ in range(d // q):
            xq = pow_mod(xq, p, f, p)
        if gcd(sub(xq, X, p), f, p) != ONE:
            return False
    return True


def lowest_irreducible(p: int, d: int) -> Poly:
    """First monic irreducible of degree d, ordering lower coefficients as base-p digits."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if d == 1:
        return X
    for n in range(p**d):
        coeffs = []
        k = n
        for _ in range(d):
            coeffs.append(k % p)
            k //= p
        coeffs.append(1)
        f = tuple(coeffs)
        if is_irreducible(f, p):
            return f
    raise ReducibleModulus(f"no irreducible of degree {d} over GF({p})")  # unreachable


def format_poly(a: Poly, var: str = "x") -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(var if c == 1 else f"{c}*{var}")
        else:
            parts.append(f"{var}^{i}" if c == 1 else f"{c}*{var}^{i}")
    return "+".join(parts)

"""Sparse multivariate polynomials and rational functions over GF(p).

A polynomial is a frozen tuple of (exponent_tuple, coeff) terms, sorted in
descending graded-lexicographic order, coeff in [1, p); () is zero.  The
frozen form is canonical, hashable and directly comparable.

A rational function is a (numerator, denominator) pair of such polynomials in
lowest terms with monic denominator (leading coefficient 1 under grlex).
"""

from __future__ import annotations

import heapq

from .errors import DivisionByZero

MPoly = tuple  # tuple[tuple[tuple[int, ...], int], ...]
Frac = tuple  # tuple[MPoly, MPoly]

ZERO: MPoly = ()


def grlex_key(exp):
    return (sum(exp), exp)


def freeze(d: dict, p: int) -> MPoly:
    items = [(e, c % p) for e, c in d.items() if c % p]
    items.sort(key=lambda t: grlex_key(t[0]), reverse=True)
    return tuple(items)


def constant(c: int, nvars: int, p: int) -> MPoly:
    c %= p
    if c == 0:
        return ZERO
    return (((0,) * nvars, c),)


def one(nvars: int) -> MPoly:
    return (((0,) * nvars, 1),)


def variable(i: int, nvars: int) -> MPoly:
    exp = tuple(1 if j == i else 0 for j in range(nvars))
    return ((exp, 1),)


def add(a: MPoly, b: MPoly, p: int) -> MPoly:
    d = dict(a)
    for e, c in b:
        d[e] = (d.get(e, 0) + c) % p
    return freeze(d, p)


def neg(a: MPoly, p: int) -> MPoly:
    return tuple((e, (-c) % p) for e, c in a)


def sub(a: MPoly, b: MPoly, p: int) -> MPoly:
    return add(a, neg(b, p), p)


def mul(a: MPoly, b: MPoly, p: int) -> MPoly:
    if not a or not b:
        return ZERO
    if len(a) > len(b):
        a, b = b, a
    d: dict = {}
    get = d.get
    for ea, ca in a:
        for eb, cb in b:
            e = tuple(map(int.__add__, ea, eb))
            prev = get(e)
            d[e] = ca * cb if prev is None else prev + ca * cb
    return freeze(d, p)


def scale(a: MPoly, k: int, p: int) -> MPoly:
    k %= p
    if k == 0:
        return ZERO
    return tuple((e, (c * k) % p) for e, c in a)


def leading_coeff(a: MPoly) -> int:
    return a[0][1] if a else 0


def monic(a: MPoly, p: int) -> MPoly:
    if not a or a[0][1] == 1:
        return a
    return scale(a, pow(a[0][1], p - 2, p), p)


def total_degree(a: MPoly) -> int:
    return sum(a[0][0]) if a else -1


def degree_in(a: MPoly, v: int) -> int:
    if not a:
        return -1
    return max(e[v] for e, _ in a)


def is_constant(a: MPoly) -> bool:
    return not a or sum(a[0][0]) == 0


def exact_div(a: MPoly, b: MPoly, p: int) -> MPoly:
    """Divide a by b, asserting zero remainder."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if not a:
        return ZERO
    if is_one(b):
        return a
    rem = dict(a)
    q: dict = {}
    eb, cb = b[0]
    cb_inv = pow(cb, p - 2, p)
    # lazy max-heap over grlex (negated keys); stale entries skipped
    heap = [(-sum(e), tuple(-x for x in e), e) for e in rem]
    heapq.heapify(heap)
    while rem:
        while heap:
            _, _, er = heap[0]
            if er in rem:
                break
            heapq.heappop(heap)
        cr = rem[er]
        e = tuple(map(int.__sub__, er, eb))
        if any(x < 0 for x in e):
            raise ValueError("inexact polynomial division")
        c = (cr * cb_inv) % p
        q[e] = q.get(e, 0) + c
        for e2, c2 in b:
            key = tuple(map(int.__add__, e, e2))
            old = rem.get(key, 0)
            nv = (old - c * c2) % p
            if nv:
                if old == 0:
                    heapq.heappush(heap, (-sum(key), tuple(-x for x in key), key))
                rem[key] = nv
            else:
                rem.pop(key, None)
    return freeze(q, p)


def _univar_view(a: MPoly, v: int) -> dict:
    """View a as a polynomial in variable v: {deg: coefficient-poly with exp[v]=0}."""
    out: dict = {}
    for e, c in a:
        d = e[v]
        e0 = e[:v] + (0,) + e[v + 1 :]
        out.setdefault(d, {})[e0] = c
    return out


def _shift_var(a: MPoly, v: int, k: int) -> MPoly:
    """Multiply by x_v^k (terms stay grlex-sorted under a uniform shift)."""
    return tuple((e[:v] + (e[v] + k,) + e[v + 1 :], c) for e, c in a)


def _coeff_of(a: MPoly, v: int, d: int, p: int) -> MPoly:
    items = [(e[:v] + (0,) + e[v + 1 :], c) for e, c in a if e[v] == d]
    return freeze(dict(items), p)


def content(a: MPoly, v: int, p: int) -> MPoly:
    """gcd of the coefficients of a viewed as a polynomial in x_v."""
    view = _univar_view(a, v)
    g = ZERO
    for coeff_dict in view.values():
        g = gcd(g, freeze(coeff_dict, p), p)
        if is_constant(g) and g:
            break
    return g


def primitive_part(a: MPoly, v: int, p: int) -> MPoly:
    if not a:
        return ZERO
    c = content(a, v, p)
    return exact_div(a, c, p)


def _prem(f: MPoly, g: MPoly, v: int, p: int) -> MPoly:
    """Pseudo-remainder of f by g with respect to x_v."""
    dg = degree_in(g, v)
    lcg = _coeff_of(g, v, dg, p)
    r = f
    while r and degree_in(r, v) >= dg:
        dr = degree_in(r, v)
        lcr = _coeff_of(r, v, dr, p)
        r = sub(mul(lcg, r, p), mul(lcr, _shift_var(g, v, dr - dg), p), p)
    return r


def _term_exponent_gcd(a: MPoly):
    it = iter(a)
    e = list(next(it)[0])
    for exp, _ in it:
        for i, x in enumerate(exp):
            if x < e[i]:
                e[i] = x
    return tuple(e)


def _divide_monomial(a: MPoly, e) -> MPoly:
    return tuple(
        (tuple(x - y for x, y in zip(exp, e)), c) for exp, c in a
    )


def _gcd_univariate(a: MPoly, b: MPoly, v: int, p: int) -> MPoly:
    """Dense Euclid when both operands involve only variable v."""
    from . import gfpoly

    def to_dense(f):
        out = [0] * (degree_in(f, v) + 1)
        for exp, c in f:
            out[exp[v]] = c
        return tuple(out)

    g = gfpoly.gcd(to_dense(a), to_dense(b), p)
    nvars = len(a[0][0])
    terms = {}
    for d, c in enumerate(g):
        if c:
            e = tuple(d if i == v else 0 for i in range(nvars))
            terms[e] = c
    return freeze(terms, p)


def gcd(a: MPoly, b: MPoly, p: int) -> MPoly:
    """Monic gcd: monomial stripping + dense Euclid + primitive PRS fallback."""
    if not a:
        return monic(b, p)
    if not b:
        return monic(a, p)
    if a == b:
        return monic(a, p)
    nvars = len(a[0][0])
    if is_constant(a) or is_constant(b):
        return one(nvars)
    ea = _term_exponent_gcd(a)
    eb = _term_exponent_gcd(b)
    shared = tuple(min(x, y) for x, y in zip(ea, eb))
    a1 = _divide_monomial(a, ea) if any(ea) else a
    b1 = _divide_monomial(b, eb) if any(eb) else b
    shared_mono = ((shared, 1),) if any(shared) else one(nvars)
    # after stripping its monomial content a single-term operand is a unit
    if len(a1) == 1 or len(b1) == 1:
        return shared_mono
    vars_a = {i for i in range(nvars) if degree_in(a1, i) > 0}
    vars_b = {i for i in range(nvars) if degree_in(b1, i) > 0}
    common = vars_a & vars_b
    if not common:
        return shared_mono
    used = vars_a | vars_b
    if len(used) == 1:
        g = _gcd_univariate(a1, b1, next(iter(used)), p)
        return monic(mul(shared_mono, g, p), p)
    v = min(common)
    ca = content(a1, v, p)
    cb = content(b1, v, p)
    cg = gcd(ca, cb, p)
    f = exact_div(a1, ca, p)
    g = exact_div(b1, cb, p)
    if degree_in(f, v) < degree_in(g, v):
        f, g = g, f
    while True:
        r = _prem(f, g, v, p)
        if not r:
            prim = primitive_part(g, v, p)
            break
        if degree_in(r, v) == 0:
            prim = one(nvars)
            break
        f, g = g, primitive_part(r, v, p)
    return monic(mul(mul(cg, prim, p), shared_mono, p), p)


# -- rational functions ------------------------------------------------------


def is_one(a: MPoly) -> bool:
    return len(a) == 1 and a[0][1] == 1 and not any(a[0][0])


def frac(num: MPoly, den: MPoly, p: int) -> Frac:
    """Canonical fraction: lowest terms, monic denominator."""
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return (ZERO, one(len(den[0][0])))
    if is_one(den):
        return (num, den)
    g = gcd(num, den, p)
    if not is_constant(g):
        num = exact_div(num, g, p)
        den = exact_div(den, g, p)
    lc = leading_coeff(den)
    if lc != 1:
        inv = pow(lc, p - 2, p)
        num = scale(num, inv, p)
        den = scale(den, inv, p)
    return (num, den)


def frac_zero(nvars: int) -> Frac:
    return (ZERO, one(nvars))


def frac_one(nvars: int) -> Frac:
    return (one(nvars), one(nvars))


def frac_is_zero(x: Frac) -> bool:
    return not x[0]


def frac_add(x: Frac, y: Frac, p: int) -> Frac:
    a, b = x
    c, d = y
    if not a:
        return y
    if not c:
        return x
    if b == d:
        if is_one(b):
            return (add(a, c, p), b)
        return frac(add(a, c, p), b, p)
    g = gcd(b, d, p)
    if is_constant(g):
        num = add(mul(a, d, p), mul(c, b, p), p)
        return frac(num, mul(b, d, p), p)
    b1 = exact_div(b, g, p)
    d1 = exact_div(d, g, p)
    num = add(mul(a, d1, p), mul(c, b1, p), p)
    return frac(num, mul(b1, d, p), p)


def frac_neg(x: Frac, p: int) -> Frac:
    return (neg(x[0], p), x[1])


def frac_sub(x: Frac, y: Frac, p: int) -> Frac:
    return frac_add(x, frac_neg(y, p), p)


def frac_mul(x: Frac, y: Frac, p: int) -> Frac:
    a, b = x
    c, d = y
    if not a or not c:
        return frac_zero(len(b[0][0]))
    one_b = is_one(b)
    one_d = is_one(d)
    if one_b and one_d:
        return (mul(a, c, p), b)
    if not one_d:
        g1 = gcd(a, d, p)
        if not is_constant(g1):
            a = exact_div(a, g1, p)
            d = exact_div(d, g1, p)
    if not one_b:
        g2 = gcd(c, b, p)
        if not is_constant(g2):
            c = exact_div(c, g2, p)
            b = exact_div(b, g2, p)
    # cross-cancelled operands are pairwise coprime: only monic-normalize
    num = mul(a, c, p)
    den = mul(b, d, p)
    lc = leading_coeff(den)
    if lc != 1:
        inv = pow(lc, p - 2, p)
        num = scale(num, inv, p)
        den = scale(den, inv, p)
    return (num, den)


def frac_inv(x: Frac, p: int) -> Frac:
    if not x[0]:
        raise DivisionByZero("inverse of zero rational function")
    return frac(x[1], x[0], p)


def frac_div(x: Frac, y: Frac, p: int) -> Frac:
    return frac_mul(x, frac_inv(y, p), p)


def format_mpoly(a: MPoly, varnames) -> str:
    if not a:
        return "0"
    parts = []
    for e, c in a:
        factors = []
        for name, k in zip(varnames, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return "+".join(parts)


def format_frac(x: Frac, varnames) -> str:
    num, den = x
    num_s = format_mpoly(num, varnames)
    if den == one(len(varnames)):
        return num_s
    den_s = format_mpoly(den, varnames)
    if "+" in num_s or "*" in num_s:
        num_s = f"({num_s})"
    if "+" in den_s or "*" in den_s:
        den_s = f"({den_s})"
    return f"{num_s}/{den_s}"

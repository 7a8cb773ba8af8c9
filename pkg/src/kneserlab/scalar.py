"""Exact coefficient-field arithmetic.

Three field kinds are supported:

* ``prime``             -- GF(p), payload: int in [0, p)
* ``poly_quotient``     -- GF(p)[x]/(f) with f monic irreducible,
                           payload: tuple of deg(f) ints (coeffs of 1, x, ...)
* ``rational_function`` -- GF(p)(t1, ..., tk), payload: canonical
                           (numerator, denominator) pair of mpoly terms

All payloads are canonical, hashable values; equality of payloads is equality
of field elements.  Hot loops work on raw payloads through the descriptor's
methods; the Scalar wrapper adds operator sugar for interactive use.
"""

from __future__ import annotations

from . import gfpoly, mpoly
from .errors import (
    DescriptorMismatch,
    DivisionByZero,
    NotPrime,
    ReducibleModulus,
)

PRIME = "prime"
POLY_QUOTIENT = "poly_quotient"
RATIONAL_FUNCTION = "rational_function"

# moduli above this degree are accepted untested (flagged on the descriptor)
IRREDUCIBILITY_CHECK_LIMIT = 12


class FieldDescriptor:
    """Immutable description of a coefficient field, with arithmetic methods."""

    __slots__ = (
        "kind",
        "p",
        "modulus",
        "variables",
        "var",
        "degree",
        "nvars",
        "irreducibility_checked",
        "_zero",
        "_one",
    )

    def __init__(self, kind, p, modulus=None, variables=None, var="x"):
        if not gfpoly.is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        self.kind = kind
        self.p = p
        self.modulus = None
        self.variables = None
        self.var = var
        self.degree = 1
        self.nvars = 0
        self.irreducibility_checked = True
        if kind == PRIME:
            self._zero = 0
            self._one = 1 % p
        elif kind == POLY_QUOTIENT:
            f = gfpoly.trim(tuple(c % p for c in modulus))
            if not f or f[-1] != 1:
                raise ReducibleModulus("modulus must be monic")
            d = gfpoly.degree(f)
            if d < 1:
                raise ReducibleModulus("modulus must have degree >= 1")
            if d <= IRREDUCIBILITY_CHECK_LIMIT:
                if not gfpoly.is_irreducible(f, p):
                    raise ReducibleModulus(
                        f"modulus {gfpoly.format_poly(f, var)} is reducible over GF({p})"
                    )
            else:
                self.irreducibility_checked = False
            self.modulus = f
            self.degree = d
            self._zero = (0,) * d
            self._one = (1,) + (0,) * (d - 1)
        elif kind == RATIONAL_FUNCTION:
            names = tuple(variables)
            if not names or len(set(names)) != len(names):
                raise ValueError("variable names must be nonempty and distinct")
            self.variables = names
            self.nvars = len(names)
            self._zero = mpoly.frac_zero(self.nvars)
            self._one = mpoly.frac_one(self.nvars)
        else:
            raise ValueError(f"unknown field kind {kind!r}")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def prime_field(p):
        return FieldDescriptor(PRIME, p)

    @staticmethod
    def extension_field(p, modulus=None, degree=None, var="x"):
        if modulus is None:
            if degree is None:
                raise ValueError("need a modulus or a degree")
            modulus = gfpoly.lowest_irreducible(p, degree)
        return FieldDescriptor(POLY_QUOTIENT, p, modulus=modulus, var=var)

    @staticmethod
    def function_field(p, variables):
        return FieldDescriptor(RATIONAL_FUNCTION, p, variables=variables)

    # -- identity ---------------------------------------------------------

    def _key(self):
        return (self.kind, self.p, self.modulus, self.variables, self.var)

    def __eq__(self, other):
        return isinstance(other, FieldDescriptor) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.kind == PRIME:
            return f"GF({self.p})"
        if self.kind == POLY_QUOTIENT:
            return f"GF({self.p})[{self.var}]/({gfpoly.format_poly(self.modulus, self.var)})"
        return f"GF({self.p})({','.join(self.variables)})"

    # -- element arithmetic on payloads ------------------------------------

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def is_zero(self, a):
        return a == self._zero

    def from_int(self, n):
        p = self.p
        if self.kind == PRIME:
            return n % p
        if self.kind == POLY_QUOTIENT:
            return (n % p,) + (0,) * (self.degree - 1)
        num = mpoly.constant(n, self.nvars, p)
        return (num, mpoly.one(self.nvars))

    def add(self, a, b):
        if self.kind == PRIME:
            return (a + b) % self.p
        if self.kind == POLY_QUOTIENT:
            p = self.p
            return tuple((x + y) % p for x, y in zip(a, b))
        return mpoly.frac_add(a, b, self.p)

    def sub(self, a, b):
        if self.kind == PRIME:
            return (a - b) % self.p
        if self.kind == POLY_QUOTIENT:
            p = self.p
            return tuple((x - y) % p for x, y in zip(a, b))
        return mpoly.frac_sub(a, b, self.p)

    def neg(self, a):
        if self.kind == PRIME:
            return (-a) % self.p
        if self.kind == POLY_QUOTIENT:
            p = self.p
            return tuple((-x) % p for x in a)
        return mpoly.frac_neg(a, self.p)

    def mul(self, a, b):
        if self.kind == PRIME:
            return (a * b) % self.p
        if self.kind == POLY_QUOTIENT:
            prod = gfpoly.mul(gfpoly.trim(a), gfpoly.trim(b), self.p)
            return self._pad(gfpoly.mod(prod, self.modulus, self.p))
        if a == self._one:
            return b
        if b == self._one:
            return a
        return mpoly.frac_mul(a, b, self.p)

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.kind == PRIME:
            return pow(a, self.p - 2, self.p)
        if self.kind == POLY_QUOTIENT:
            return self._pad(gfpoly.inverse_mod(gfpoly.trim(a), self.modulus, self.p))
        return mpoly.frac_inv(a, self.p)

    def div(self, a, b):
        if self.is_zero(b):
            raise DivisionByZero(f"division by zero in {self!r}")
        if self.kind == RATIONAL_FUNCTION:
            return mpoly.frac_div(a, b, self.p)
        return self.mul(a, self.inv(b))

    def canon(self, a):
        """Re-canonicalize a payload (idempotent; raw payloads are already canonical)."""
        if self.kind == PRIME:
            return a % self.p
        if self.kind == POLY_QUOTIENT:
            return self._pad(gfpoly.mod(gfpoly.trim(a), self.modulus, self.p))
        return mpoly.frac(a[0], a[1], self.p)

    def _pad(self, coeffs):
        return tuple(coeffs) + (0,) * (self.degree - len(coeffs))

    # -- enumeration and sampling -----------------------------------------

    def size(self):
        """Number of elements, or None when infinite."""
        if self.kind == PRIME:
            return self.p
        if self.kind == POLY_QUOTIENT:
            return self.p**self.degree
        return None

    def elements(self):
        if self.kind == PRIME:
            yield from range(self.p)
        elif self.kind == POLY_QUOTIENT:
            p, d = self.p, self.degree
            for n in range(p**d):
                coeffs = []
                for _ in range(d):
                    coeffs.append(n % p)
                    n //= p
                yield tuple(coeffs)
        else:
            raise ValueError("cannot enumerate an infinite field")

    def random(self, rng, degree_bound=2):
        """Random payload; for function fields, num/den degree <= degree_bound."""
        p = self.p
        if self.kind == PRIME:
            return rng.randrange(p)
        if self.kind == POLY_QUOTIENT:
            return tuple(rng.randrange(p) for _ in range(self.degree))
        num = self._random_poly(rng, degree_bound)
        den = mpoly.ZERO
        while not den:
            den = self._random_poly(rng, degree_bound)
        return mpoly.frac(num, den, p)

    def _random_poly(self, rng, degree_bound):
        terms = {}
        for e in _exponents_up_to(self.nvars, degree_bound):
            c = rng.randrange(self.p)
            if c:
                terms[e] = c
        return mpoly.freeze(terms, self.p)

    # -- formatting and parsing ---------------------------------------------

    def format(self, a):
        if self.kind == PRIME:
            return str(a)
        if self.kind == POLY_QUOTIENT:
            return gfpoly.format_poly(gfpoly.trim(a), self.var)
        return mpoly.format_frac(a, self.variables)

    def parse(self, text):
        names = {}
        if self.kind == POLY_QUOTIENT:
            gen = self._pad((0, 1)) if self.degree > 1 else self.canon((0, 1))
            names[self.var] = gen
        elif self.kind == RATIONAL_FUNCTION:
            for i, name in enumerate(self.variables):
                names[name] = (
                    mpoly.variable(i, self.nvars),
                    mpoly.one(self.nvars),
                )
        return _parse_expression(text, self, names)

    # -- serialization -------------------------------------------------------

    def to_json(self):
        out = {"kind": self.kind, "p": self.p}
        if self.kind == POLY_QUOTIENT:
            out["modulus"] = gfpoly.format_poly(self.modulus, self.var)
            out["var"] = self.var
        elif self.kind == RATIONAL_FUNCTION:
            out["variables"] = list(self.variables)
        return out

    @staticmethod
    def from_json(data):
        kind = data.get("kind")
        p = data.get("p")
        if kind == PRIME:
            return FieldDescriptor.prime_field(p)
        if kind == POLY_QUOTIENT:
            var = data.get("var", "x")
            mod_text = data.get("modulus")
            coeffs = _parse_poly_text(mod_text, var, p)
            return FieldDescriptor.extension_field(p, modulus=coeffs, var=var)
        if kind == RATIONAL_FUNCTION:
            return FieldDescriptor.function_field(p, data.get("variables"))
        raise ValueError(f"unknown field kind {kind!r}")


def _exponents_up_to(nvars, degree_bound):
    def rec(prefix, remaining, budget):
        if remaining == 0:
            yield tuple(prefix)
            return
        for d in range(budget + 1):
            yield from rec(prefix + [d], remaining - 1, budget - d)

    yield from rec([], nvars, degree_bound)


class Scalar:
    """A field element: descriptor plus canonical payload."""

    __slots__ = ("field", "payload")

    def __init__(self, field, payload):
        self.field = field
        self.payload = payload

    @staticmethod
    def of(field, value):
        if isinstance(value, Scalar):
            if value.field != field:
                raise DescriptorMismatch("scalar from a different field")
            return value
        if isinstance(value, int):
            return Scalar(field, field.from_int(value))
        if isinstance(value, str):
            return Scalar(field, field.parse(value))
        return Scalar(field, field.canon(value))

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise DescriptorMismatch(
                    f"mixed fields: {self.field!r} vs {other.field!r}"
                )
            return other.payload
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.add(self.payload, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(self.payload, b))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.payload, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.div(self.payload, b))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.payload))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.payload == other.payload
        if isinstance(other, int):
            return self.payload == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.payload))

    def __bool__(self):
        return not self.field.is_zero(self.payload)

    def __repr__(self):
        return self.field.format(self.payload)

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.payload))


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply one of {add, sub, mul, div} to two scalars of one field."""
    if a.field != b.field:
        raise DescriptorMismatch("operands come from different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def scalar_inverse(a: Scalar) -> Scalar:
    return a.inverse()


# -- tiny expression parser ---------------------------------------------------
# grammar: expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
# unary := '-' unary | atom ('^' int)? ; atom := int | name | '(' expr ')'


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
        elif ch in "+-*/^()":
            tokens.append((ch, ch))
            i += 1
        else:
            raise ValueError(f"bad character {ch!r} in {text!r}")
    tokens.append(("end", None))
    return tokens


def _parse_expression(text, field, names):
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]][0]

    def take(kind=None):
        tk = tokens[pos[0]]
        if kind is not None and tk[0] != kind:
            raise ValueError(f"expected {kind} at token {pos[0]} in {text!r}")
        pos[0] += 1
        return tk

    def atom():
        tk = take()
        if tk[0] == "int":
            return field.from_int(tk[1])
        if tk[0] == "name":
            if tk[1] not in names:
                raise ValueError(f"unknown symbol {tk[1]!r} in {text!r}")
            return names[tk[1]]
        if tk[0] == "(":
            v = expr()
            take(")")
            return v
        raise ValueError(f"unexpected token {tk!r} in {text!r}")

    def unary():
        if peek() == "-":
            take()
            return field.neg(unary())
        v = atom()
        if peek() == "^":
            take()
            e = take("int")[1]
            out = field.one()
            for _ in range(e):
                out = field.mul(out, v)
            return out
        return v

    def term():
        v = unary()
        while peek() in ("*", "/"):
            op = take()[0]
            w = unary()
            v = field.mul(v, w) if op == "*" else field.div(v, w)
        return v

    def expr():
        v = term()
        while peek() in ("+", "-"):
            op = take()[0]
            w = term()
            v = field.add(v, w) if op == "+" else field.sub(v, w)
        return v

    out = expr()
    take("end")
    return out


def _parse_poly_text(text, var, p):
    """Parse a modulus string like 'x^4+x+1' into a little-endian coeff tuple."""

    # reuse the expression parser over GF(p)[x] by evaluating with a symbolic
    # one-variable polynomial payload: coefficients dict keyed by degree
    def padd(a, b):
        out = dict(a)
        for k, v in b.items():
            out[k] = (out.get(k, 0) + v) % p
        return {k: v for k, v in out.items() if v}

    def pmul(a, b):
        out = {}
        for i, x in a.items():
            for j, y in b.items():
                out[i + j] = (out.get(i + j, 0) + x * y) % p
        return {k: v for k, v in out.items() if v}

    class PolyField:
        def from_int(self, n):
            n %= p
            return {0: n} if n else {}

        def one(self):
            return {0: 1}

        def add(self, a, b):
            return padd(a, b)

        def sub(self, a, b):
            return padd(a, {k: -v % p for k, v in b.items()})

        def neg(self, a):
            return {k: -v % p for k, v in a.items()}

        def mul(self, a, b):
            return pmul(a, b)

        def div(self, a, b):
            raise ValueError("division not allowed in a modulus")

    d = _parse_expression(text, PolyField(), {var: {1: 1}})
    if not d:
        return ()
    out = [0] * (max(d) + 1)
    for k, v in d.items():
        out[k] = v
    return tuple(out)

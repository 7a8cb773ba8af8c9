"""Finite-dimensional field extensions L/F as F-algebras.

A TowerSpec fixes a basis e_1, ..., e_m of L over the coefficient field F
(with e_1 = 1) and the structure tensor c[i][j][k] giving
e_i * e_j = sum_k c[i][j][k] e_k.  Elements are coordinate rows over F.
Construction validates commutativity, the unit law, associativity and
(probabilistically) the absence of zero divisors.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random

from . import gfpoly
from .errors import (
    DimensionOverflow,
    DivisionByZero,
    SingularMultiplicationMap,
    TowerInvariantError,
    TowerMismatch,
)
from .linalg import GenericBackend, PackedGF2Backend
from .scalar import PRIME, FieldDescriptor, Scalar

DEFAULT_DIM_CAP = 64
FULL_ASSOC_CHECK_LIMIT = 12
ZERO_DIVISOR_SAMPLES = 500
MUL_TABLE_DIM_LIMIT = 8


class Element:
    """An element of a tower: coordinate row over the base field."""

    __slots__ = ("tower", "row")

    def __init__(self, tower, row):
        self.tower = tower
        self.row = row

    def coords(self):
        """Coordinates as Scalar objects."""
        base = self.tower.base
        return tuple(
            Scalar(base, c) for c in self.tower.backend.row_to_payloads(self.row)
        )

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.tower is other.tower
            and self.row == other.row
        )

    def __hash__(self):
        return hash((id(self.tower), self.row))

    def __add__(self, other):
        self.tower._same(other.tower)
        return Element(self.tower, self.tower.backend.add(self.row, other.row))

    def __mul__(self, other):
        self.tower._same(other.tower)
        return Element(self.tower, self.tower.mul_rows(self.row, other.row))

    def __repr__(self):
        return self.tower.format_row(self.row)


class TowerSpec:
    """Immutable description of L/F with multiplication tensor on a fixed basis."""

    def __init__(self, base, tensor, labels=None, sigma=None, dim_cap=DEFAULT_DIM_CAP,
                 validate=True, name=None):
        self.base = base
        self.m = len(tensor)
        if self.m < 1:
            raise TowerInvariantError("tower dimension must be at least 1")
        if self.m > dim_cap:
            raise DimensionOverflow(f"dimension {self.m} exceeds cap {dim_cap}")
        self.tensor = tuple(
            tuple(tuple(base.canon(c) for c in row) for row in plane)
            for plane in tensor
        )
        self.labels = tuple(labels) if labels else tuple(
            f"e{i+1}" for i in range(self.m)
        )
        self.name = name or f"tower(dim={self.m} over {base!r})"
        if base.kind == PRIME and base.p == 2:
            self.backend = PackedGF2Backend(self.m)
        else:
            self.backend = GenericBackend(base, self.m)
        if sigma is None:
            sigma = [base.zero()] * self.m
            sigma[self.m - 1] = base.one()
        self.sigma_default = tuple(base.canon(c) for c in sigma)
        if all(base.is_zero(c) for c in self.sigma_default):
            raise TowerInvariantError("sigma must be a nonzero linear form")
        # right-multiplication matrices: R_j[i] = coords of e_i * e_j
        be = self.backend
        self.right_mult = tuple(
            tuple(
                be.row_from_payloads(self.tensor[i][j]) for i in range(self.m)
            )
            for j in range(self.m)
        )
        self.one_row = be.unit_row(0)
        self.zero_row = be.zero_row()
        self.associativity_sampled = False
        self._mul_table = None
        if be.packed and self.m <= MUL_TABLE_DIM_LIMIT:
            self._build_mul_table()
        if validate:
            self.validate()

    # -- identity ----------------------------------------------------------

    def _same(self, other):
        if self is not other:
            raise TowerMismatch("elements/subspaces belong to different towers")

    def content_hash(self):
        return hashlib.sha256(
            json.dumps(self.to_json(), sort_keys=True).encode()
        ).hexdigest()[:16]

    def __repr__(self):
        return self.name

    # -- element arithmetic --------------------------------------------------

    def _build_mul_table(self):
        m = self.m
        size = 1 << m
        by_basis = [
            [self.backend.combine(a, self.right_mult[j]) for j in range(m)]
            for a in range(size)
        ]
        table = []
        for a in range(size):
            row = [0] * size
            ba = by_basis[a]
            for b in range(1, size):
                low = b & -b
                row[b] = row[b ^ low] ^ ba[low.bit_length() - 1]
            table.append(row)
        self._mul_table = table

    def mul_rows(self, x, y):
        if self._mul_table is not None:
            return self._mul_table[x][y]
        be = self.backend
        if be.packed:
            acc = 0
            while y:
                low = y & -y
                acc ^= be.combine(x, self.right_mult[low.bit_length() - 1])
                y ^= low
            return acc
        base = self.base
        acc = be.zero_row()
        for j, c in enumerate(y):
            if base.is_zero(c):
                continue
            part = be.combine(x, self.right_mult[j])
            acc = be.add(acc, be.scale(c, part))
        return acc

    def mul_matrix(self, x):
        """Rows R[i] = coords of e_i * x (multiplication-by-x acting on rows)."""
        be = self.backend
        return tuple(self.mul_rows(be.unit_row(i), x) for i in range(self.m))

    def inverse_row(self, x):
        be = self.backend
        if be.is_zero(x):
            raise DivisionByZero("inverse of the zero element")
        mat = self.mul_matrix(x)
        transposed = _transpose(be, mat, self.m)
        if be.packed:
            target = [(self.one_row >> i) & 1 for i in range(self.m)]
        else:
            target = list(self.one_row)
        sol = be.solve_right(transposed, target)
        if sol is None:
            raise SingularMultiplicationMap(
                "multiplication map is singular: the algebra is not a field"
            )
        return sol

    # -- element constructors -------------------------------------------------

    def element(self, values):
        """Element from scalar payloads, Scalars, ints or strings (length m)."""
        base = self.base
        payloads = []
        for v in values:
            payloads.append(Scalar.of(base, v).payload)
        if len(payloads) != self.m:
            raise TowerInvariantError(f"expected {self.m} coordinates")
        return Element(self, self.backend.row_from_payloads(payloads))

    def zero(self):
        return Element(self, self.zero_row)

    def one(self):
        return Element(self, self.one_row)

    def basis_element(self, i):
        return Element(self, self.backend.unit_row(i))

    def random_row(self, rng, degree_bound=2):
        base = self.base
        return self.backend.row_from_payloads(
            [base.random(rng, degree_bound) for _ in range(self.m)]
        )

    def all_rows(self):
        """Every coordinate row (finite base fields only)."""
        if self.backend.packed:
            yield from range(1 << self.m)
            return
        for combo in itertools.product(list(self.base.elements()), repeat=self.m):
            yield self.backend.row_from_payloads(combo)

    def format_row(self, row):
        base = self.base
        payloads = self.backend.row_to_payloads(row)
        parts = []
        for c, label in zip(payloads, self.labels):
            if base.is_zero(c):
                continue
            cs = base.format(c)
            if label == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(label)
            else:
                cs_wrapped = f"({cs})" if "+" in cs or "/" in cs else cs
                parts.append(f"{cs_wrapped}*{label}")
        return " + ".join(parts) if parts else "0"

    # -- validation ------------------------------------------------------------

    def validate(self, assoc_limit=FULL_ASSOC_CHECK_LIMIT):
        base = self.base
        m = self.m
        for i in range(m):
            for j in range(m):
                if self.tensor[i][j] != self.tensor[j][i]:
                    raise TowerInvariantError(
                        f"tensor not symmetric at ({i},{j}): multiplication not commutative"
                    )
        for j in range(m):
            for k in range(m):
                expected = base.one() if j == k else base.zero()
                if self.tensor[0][j][k] != expected:
                    raise TowerInvariantError("e_1 does not act as identity")
        be = self.backend
        units = [be.unit_row(i) for i in range(m)]
        if m <= assoc_limit:
            triples = itertools.product(range(m), repeat=3)
        else:
            rng = random.Random(f"assoc:{self.m}:{self.base!r}")
            triples = (
                tuple(rng.randrange(m) for _ in range(3)) for _ in range(2000)
            )
            self.associativity_sampled = True
        for i, j, k in triples:
            left = self.mul_rows(self.mul_rows(units[i], units[j]), units[k])
            right = self.mul_rows(units[i], self.mul_rows(units[j], units[k]))
            if left != right:
                raise TowerInvariantError(
                    f"associativity fails on basis triple ({i},{j},{k})"
                )
        rng = random.Random(f"fieldcheck:{self.m}:{self.base!r}")
        for _ in range(ZERO_DIVISOR_SAMPLES):
            x = self.random_row(rng, degree_bound=1)
            y = self.random_row(rng, degree_bound=1)
            if be.is_zero(x) or be.is_zero(y):
                continue
            if be.is_zero(self.mul_rows(x, y)):
                raise TowerInvariantError(
                    "zero divisors found: the algebra is not a field"
                )
        return True

    # -- serialization ----------------------------------------------------------

    def to_json(self):
        base = self.base
        return {
            "base": base.to_json(),
            "dim": self.m,
            "tensor": [
                [[base.format(c) for c in row] for row in plane]
                for plane in self.tensor
            ],
            "labels": list(self.labels),
            "sigma": [base.format(c) for c in self.sigma_default],
        }

    @staticmethod
    def from_json(data, validate=True):
        for key in ("base", "dim", "tensor"):
            if key not in data:
                raise TowerInvariantError(f"tower spec missing field {key!r}")
        base = FieldDescriptor.from_json(data["base"])
        m = data["dim"]
        tensor_text = data["tensor"]
        if len(tensor_text) != m:
            raise TowerInvariantError("tower spec field 'tensor' has wrong shape")
        tensor = [
            [[base.parse(c) for c in row] for row in plane] for plane in tensor_text
        ]
        sigma = None
        if data.get("sigma"):
            sigma = [base.parse(c) for c in data["sigma"]]
        return TowerSpec(
            base,
            tensor,
            labels=data.get("labels"),
            sigma=sigma,
            validate=validate,
        )

    def with_tensor_fault(self, i, j, k, delta=None):
        """Copy with one structure constant perturbed, skipping validation.

        Used by the fault-injection self-test: the result is deliberately not
        a valid algebra, so downstream suites are expected to flag it.
        """
        base = self.base
        if delta is None:
            delta = base.one()
        tensor = [
            [list(row) for row in plane] for plane in self.tensor
        ]
        tensor[i][j][k] = base.add(tensor[i][j][k], delta)
        spec = TowerSpec(
            base,
            tensor,
            labels=self.labels,
            sigma=self.sigma_default,
            validate=False,
            name=f"{self.name}+fault({i},{j},{k})",
        )
        return spec


def _transpose(backend, rows, width):
    if backend.packed:
        out = []
        for j in range(width):
            v = 0
            for i, r in enumerate(rows):
                v |= ((r >> j) & 1) << i
            out.append(v)
        return tuple(out)
    n = len(rows)
    return tuple(tuple(rows[i][j] for i in range(n)) for j in range(width))


# -- builders -------------------------------------------------------------------


def finite_field(p, m, modulus=None, sigma=None, dim_cap=DEFAULT_DIM_CAP):
    """GF(p^m) over GF(p) on the power basis of a root of the modulus."""
    base = FieldDescriptor.prime_field(p)
    if m == 1:
        tensor = (((base.one(),),),)
        return TowerSpec(base, tensor, labels=("1",), sigma=sigma, dim_cap=dim_cap,
                         name=f"GF({p})")
    if modulus is None:
        modulus = gfpoly.lowest_irreducible(p, m)
    else:
        modulus = gfpoly.trim(tuple(c % p for c in modulus))
    # descriptor construction re-checks irreducibility and monicity
    FieldDescriptor.extension_field(p, modulus=modulus)
    powers = [gfpoly.mod(gfpoly.ONE, modulus, p)]
    for _ in range(2 * m - 2):
        powers.append(
            gfpoly.mod(gfpoly.mul(powers[-1], gfpoly.X, p), modulus, p)
        )
    def pad(poly):
        return tuple(poly) + (0,) * (m - len(poly))
    tensor = tuple(
        tuple(pad(powers[i + j]) for j in range(m)) for i in range(m)
    )
    labels = ["1"] + [f"a^{i}" if i > 1 else "a" for i in range(1, m)]
    return TowerSpec(
        base,
        tensor,
        labels=labels,
        sigma=sigma,
        dim_cap=dim_cap,
        name=f"GF({p}^{m})",
    )


_ROOT_NAMES = ("u", "v", "w")


def inseparable(p, variables, sigma=None, dim_cap=DEFAULT_DIM_CAP):
    """L = F(t1^(1/p), ..., tk^(1/p)) over F = GF(p)(t1, ..., tk).

    Basis: monomials u1^a1 ... uk^ak with 0 <= a_i < p and u_i^p = t_i.
    Every element of L has its p-th power in F, so L/F is purely inseparable.
    """
    variables = list(variables)
    k = len(variables)
    base = FieldDescriptor.function_field(p, variables)
    m = p**k
    if m > dim_cap:
        raise DimensionOverflow(f"dimension {m} exceeds cap {dim_cap}")
    roots = (
        [_ROOT_NAMES[i] for i in range(k)]
        if k <= len(_ROOT_NAMES)
        else [f"u{i+1}" for i in range(k)]
    )
    exponents = list(itertools.product(*[range(p)] * k))
    # little-endian counting: first root varies fastest, exponent (0,...,0) first
    exponents.sort(key=lambda e: sum(e[i] * p**i for i in range(k)))
    index = {e: i for i, e in enumerate(exponents)}
    zero = base.zero()

    def monomial_payload(carries):
        from . import mpoly

        num = mpoly.one(k)
        for i, c in enumerate(carries):
            if c:
                num = mpoly.mul(num, mpoly.variable(i, k), p)
        return (num, mpoly.one(k))

    tensor = []
    for ea in exponents:
        plane = []
        for eb in exponents:
            total = [a + b for a, b in zip(ea, eb)]
            carries = [1 if t >= p else 0 for t in total]
            reduced = tuple(t - p if t >= p else t for t in total)
            coeff = monomial_payload(carries)
            row = [zero] * m
            row[index[reduced]] = coeff
            plane.append(tuple(row))
        tensor.append(tuple(plane))

    def label(e):
        parts = []
        for r, a in zip(roots, e):
            if a == 1:
                parts.append(r)
            elif a > 1:
                parts.append(f"{r}^{a}")
        return "*".join(parts) if parts else "1"

    labels = [label(e) for e in exponents]
    return TowerSpec(
        base,
        tensor,
        labels=labels,
        sigma=sigma,
        dim_cap=dim_cap,
        name=f"GF({p})({','.join(variables)})^(1/{p})",
    )


def polynomial_extension(base, modulus_payloads, gen_label="y", sigma=None,
                         dim_cap=DEFAULT_DIM_CAP):
    """Extension of an arbitrary coefficient field by a monic polynomial.

    The modulus is given as payloads over `base`, little-endian, monic; the
    construction does not test irreducibility (the zero-divisor sampling in
    validation will catch reducible moduli with high probability).
    """
    mod = [base.canon(c) for c in modulus_payloads]
    if not mod or mod[-1] != base.one():
        raise TowerInvariantError("modulus must be monic")
    m = len(mod) - 1
    if m < 1:
        raise TowerInvariantError("modulus must have degree >= 1")

    def poly_mod(poly):
        poly = list(poly)
        while len(poly) > m:
            lead = poly.pop()
            if base.is_zero(lead):
                continue
            shift = len(poly) - m
            for i in range(m):
                poly[shift + i] = base.sub(poly[shift + i], base.mul(lead, mod[i]))
        return tuple(poly) + (base.zero(),) * (m - len(poly))

    powers = [poly_mod([base.one()])]
    for _ in range(2 * m - 2):
        powers.append(poly_mod((base.zero(),) + powers[-1]))
    tensor = tuple(tuple(powers[i + j] for j in range(m)) for i in range(m))
    labels = ["1"] + [
        f"{gen_label}^{i}" if i > 1 else gen_label for i in range(1, m)
    ]
    return TowerSpec(base, tensor, labels=labels, sigma=sigma, dim_cap=dim_cap,
                     name=f"{base!r}[{gen_label}]/(deg {m})")


def compose(t1, t2, sigma=None, dim_cap=DEFAULT_DIM_CAP):
    """Tensor product of two towers over one base field (product basis).

    Valid only when the result is again a field (linearly disjoint factors);
    zero-divisor sampling rejects invalid compositions probabilistically.
    """
    if t1.base != t2.base:
        raise TowerMismatch("composed towers must share a base field")
    base = t1.base
    m1, m2 = t1.m, t2.m
    m = m1 * m2
    if m > dim_cap:
        raise DimensionOverflow(f"dimension {m} exceeds cap {dim_cap}")
    t1_payload = t1.tensor
    t2_payload = t2.tensor

    def idx(i, j):
        return i + m1 * j

    zero = base.zero()
    tensor = [[None] * m for _ in range(m)]
    for i, j in itertools.product(range(m1), range(m2)):
        for i2, j2 in itertools.product(range(m1), range(m2)):
            row = [zero] * m
            c1 = t1_payload[i][i2]
            c2 = t2_payload[j][j2]
            for k in range(m1):
                if base.is_zero(c1[k]):
                    continue
                for l in range(m2):
                    if base.is_zero(c2[l]):
                        continue
                    row[idx(k, l)] = base.add(
                        row[idx(k, l)], base.mul(c1[k], c2[l])
                    )
            tensor[idx(i, j)][idx(i2, j2)] = tuple(row)
    labels = [None] * m
    for i in range(m1):
        for j in range(m2):
            a, b = t1.labels[i], t2.labels[j]
            if a == "1" and b == "1":
                labels[idx(i, j)] = "1"
            elif a == "1":
                labels[idx(i, j)] = b
            elif b == "1":
                labels[idx(i, j)] = a
            else:
                labels[idx(i, j)] = f"{a}*{b}"
    return TowerSpec(
        base,
        [tuple(plane) for plane in tensor],
        labels=labels,
        sigma=sigma,
        dim_cap=dim_cap,
        name=f"({t1.name})x({t2.name})",
    )


def element_mul(a: Element, b: Element) -> Element:
    a.tower._same(b.tower)
    return Element(a.tower, a.tower.mul_rows(a.row, b.row))


def element_inverse(a: Element) -> Element:
    return Element(a.tower, a.tower.inverse_row(a.row))


def generated_subfield(S, auto_normalize=False):
    """F(S): least multiplicatively closed subspace containing S.

    Requires 1 in S (the iteration X <- XS only grows then).  With
    auto_normalize, S is first replaced by s^-1 S for its leading basis
    vector s.  The fixpoint is closed under products, hence a subfield.
    """
    from .errors import UnitNotInSpan

    tower = S.tower
    if S.dim == 0:
        raise UnitNotInSpan("F(S) is undefined for the zero subspace")
    if not S.contains_one():
        if not auto_normalize:
            raise UnitNotInSpan("1 not in S; pass auto_normalize=True to use s^-1 S")
        S = S.scale_by_row(tower.inverse_row(S.rows[0]))
    X = S
    while True:
        X2 = X.product(S)
        if X2 == X:
            return X
        X = X2


class SubfieldEmbedding:
    """A multiplicatively closed subspace W (containing 1) viewed as a tower.

    Provides coordinate transport both ways, so the cell machinery can run
    inside F(S) when F(S) is a proper subfield of L.
    """

    def __init__(self, tower, W, validate=True):
        from .subspace import Subspace

        self.tower = tower
        self.W = W
        if not W.contains_one():
            raise TowerInvariantError("subfield must contain 1")
        if W.product(W) != W:
            raise TowerInvariantError("subspace is not multiplicatively closed")
        be = tower.backend
        basis = [tower.one_row]
        acc = (tower.one_row,)
        for r in W.rows:
            extended = be.rref(acc + (r,))
            if len(extended) > len(acc):
                basis.append(r)
                acc = extended
        self.basis = tuple(basis)
        d = len(basis)
        self._transposed = _transpose(be, self.basis, tower.m)
        tensor = []
        for i in range(d):
            plane = []
            for j in range(d):
                prod = tower.mul_rows(basis[i], basis[j])
                plane.append(self._coords(prod))
            tensor.append(tuple(plane))
        labels = [tower.format_row(b) for b in basis]
        self.sub = TowerSpec(
            tower.base,
            tensor,
            labels=labels,
            validate=validate,
            name=f"subfield(dim {d}) of {tower.name}",
        )
        self._Subspace = Subspace

    def _entries(self, row):
        be = self.tower.backend
        if be.packed:
            return [(row >> i) & 1 for i in range(self.tower.m)]
        return list(row)

    def _coords(self, row):
        be = self.tower.backend
        sol = be.solve_right(self._transposed, self._entries(row))
        if sol is None:
            raise TowerInvariantError("row does not lie in the subfield")
        if be.packed:
            return tuple((sol >> i) & 1 for i in range(len(self.basis)))
        return tuple(sol[: len(self.basis)])

    def to_sub_row(self, row):
        return self.sub.backend.row_from_payloads(self._coords(row))

    def from_sub_row(self, subrow):
        return self.tower.backend.combine(subrow, self.basis)

    def to_sub(self, X):
        return self._Subspace(self.sub, tuple(self.to_sub_row(r) for r in X.rows))

    def from_sub(self, Xs):
        return self._Subspace(
            self.tower, tuple(self.from_sub_row(r) for r in Xs.rows)
        )

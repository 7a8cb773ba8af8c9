"""Canonical F-subspace calculus inside a tower.

A Subspace is a tower reference plus an RREF basis (tuple of backend rows).
RREF is the unique canonical form, so two subspaces are equal iff their row
tuples are equal; subspaces are hashable and usable as dict keys.
"""

from __future__ import annotations

from .errors import TowerMismatch, UnitNotInSpan
from .scalar import Scalar


class Subspace:
    __slots__ = ("tower", "rows")

    def __init__(self, tower, rows, *, _canonical=False):
        self.tower = tower
        self.rows = rows if _canonical else tower.backend.rref(rows)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(tower):
        return Subspace(tower, (), _canonical=True)

    @staticmethod
    def full(tower):
        be = tower.backend
        return Subspace(
            tower, tuple(be.unit_row(i) for i in range(tower.m)), _canonical=True
        )

    @staticmethod
    def from_elements(tower, elements):
        rows = []
        for e in elements:
            if e.tower is not tower:
                raise TowerMismatch("element from a different tower")
            rows.append(e.row)
        return Subspace(tower, tuple(rows))

    @staticmethod
    def from_strings(tower, row_strings):
        base = tower.base
        rows = []
        for text in row_strings:
            payloads = [base.parse(part) for part in text.split()]
            rows.append(tower.backend.row_from_payloads(payloads))
        return Subspace(tower, tuple(rows))

    # -- basic queries ------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains_row(self, row) -> bool:
        return self.tower.backend.contains(self.rows, row)

    def contains_one(self) -> bool:
        return self.contains_row(self.tower.one_row)

    def contains_subspace(self, other) -> bool:
        self.tower._same(other.tower)
        return all(self.contains_row(r) for r in other.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.tower is other.tower
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((id(self.tower), self.rows))

    def __le__(self, other):
        return other.contains_subspace(self)

    def __lt__(self, other):
        return self.dim < other.dim and other.contains_subspace(self)

    def matrix(self):
        """Basis as a tuple of rows of Scalars (the spec'd observable form)."""
        base = self.tower.base
        be = self.tower.backend
        return tuple(
            tuple(Scalar(base, c) for c in be.row_to_payloads(r)) for r in self.rows
        )

    def row_strings(self):
        base = self.tower.base
        be = self.tower.backend
        return [
            " ".join(base.format(c) for c in be.row_to_payloads(r))
            for r in self.rows
        ]

    def __repr__(self):
        if self.dim == 0:
            return "<0>"
        return "<" + ", ".join(self.tower.format_row(r) for r in self.rows) + ">"

    # -- lattice operations ---------------------------------------------------

    def sum_(self, other):
        self.tower._same(other.tower)
        return Subspace(self.tower, self.rows + other.rows)

    def intersect(self, other):
        self.tower._same(other.tower)
        if not self.rows or not other.rows:
            return Subspace.zero(self.tower)
        be = self.tower.backend
        stacked = self.rows + other.rows
        rx = len(self.rows)
        out = []
        for w in be.left_nullspace(stacked):
            if be.packed:
                coeffs = w & ((1 << rx) - 1)
            else:
                coeffs = w[:rx]
            out.append(be.combine(coeffs, self.rows))
        return Subspace(self.tower, tuple(out))

    def product(self, other):
        self.tower._same(other.tower)
        if not self.rows or not other.rows:
            return Subspace.zero(self.tower)
        tw = self.tower
        gens = [tw.mul_rows(x, y) for x in self.rows for y in other.rows]
        return Subspace(tw, tuple(gens))

    def scale_by_row(self, x_row):
        """x * X for a nonzero element row x."""
        tw = self.tower
        return Subspace(tw, tuple(tw.mul_rows(x_row, r) for r in self.rows))


def span(vectors) -> Subspace:
    """Span of a nonempty list of Elements (empty list is not resolvable to a tower)."""
    if not vectors:
        raise ValueError("span of an empty list: use Subspace.zero(tower)")
    tower = vectors[0].tower
    return Subspace.from_elements(tower, vectors)


def sum_(X: Subspace, Y: Subspace) -> Subspace:
    return X.sum_(Y)


def intersect(X: Subspace, Y: Subspace) -> Subspace:
    return X.intersect(Y)


def product(X: Subspace, Y: Subspace) -> Subspace:
    return X.product(Y)


def boundary(S: Subspace, X: Subspace, strict: bool = True) -> int:
    """Dimension increment of X under multiplication by S.

    With 1 in S this is dim(XS) - dim(X) and XS contains X.  The permissive
    mode (strict=False) computes dim(XS) - dim(X intersect XS), which is the
    only sensible reading when 1 is not in S; callers opting in should treat
    the value as nonstandard.
    """
    S.tower._same(X.tower)
    if S.dim == 0:
        raise ValueError("boundary requires a nonzero multiplier space")
    XS = X.product(S)
    if S.contains_one():
        return XS.dim - X.dim
    if strict:
        raise UnitNotInSpan("boundary requires 1 in S (use strict=False to override)")
    return XS.dim - X.intersect(XS).dim


def complement_in(part: Subspace, whole: Subspace) -> Subspace:
    """A direct complement of `part` inside `whole` (greedy over whole's basis)."""
    part.tower._same(whole.tower)
    be = part.tower.backend
    acc = list(part.rows)
    chosen = []
    rank = len(acc)
    for r in whole.rows:
        candidate = be.rref(tuple(acc) + (r,))
        if len(candidate) > rank:
            acc = list(candidate)
            rank += 1
            chosen.append(r)
    return Subspace(part.tower, tuple(chosen))

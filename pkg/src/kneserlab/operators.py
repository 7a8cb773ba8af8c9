"""Structural operators on subspaces: saturation, duality, stabilizers.

Fix a multiplier space S with 1 in S.  The three operators are

* saturation   X~  = {x in L : xS <= XS}, the largest space with the same
               product against S; X is saturated when X~ = X;
* duality      X*  = (XS)^perp under the Frobenius form <x|y> = sigma(xy)
               for a nonzero linear functional sigma;
* stabilizer   H(X) = {k in L : kX <= X}, a subfield for nonzero
               finite-dimensional X.

The lemma_suite evaluates the identities tying these together on concrete
(S, X, Y, sigma) instances and reports hypothesis/conclusion pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateForm, UnitNotInSpan
from .subspace import Subspace


class DualityContext:
    """A nonzero linear form sigma and the Gram matrix of <x|y> = sigma(xy)."""

    __slots__ = ("tower", "sigma", "gram")

    def __init__(self, tower, sigma=None):
        base = tower.base
        if sigma is None:
            sigma = tower.sigma_default
        sigma = tuple(base.canon(c) for c in sigma)
        if all(base.is_zero(c) for c in sigma):
            raise DegenerateForm("sigma must be nonzero")
        self.tower = tower
        self.sigma = sigma
        be = tower.backend
        gram = []
        for i in range(tower.m):
            row = []
            for j in range(tower.m):
                acc = base.zero()
                for k, c in enumerate(tower.tensor[i][j]):
                    if not (base.is_zero(c) or base.is_zero(sigma[k])):
                        acc = base.add(acc, base.mul(c, sigma[k]))
                row.append(acc)
            gram.append(be.row_from_payloads(row))
        self.gram = tuple(gram)
        if len(be.rref(self.gram)) != tower.m:
            raise DegenerateForm(
                "Gram matrix singular: the form is degenerate (not a field?)"
            )

    def pair(self, x_row, y_row):
        """<x|y> = sigma(x*y) as a scalar payload."""
        be = self.tower.backend
        xg = be.combine(x_row, self.gram)
        return be.dot(xg, y_row)


def perp(ctx: DualityContext, X: Subspace) -> Subspace:
    """Orthogonal complement under the context's Frobenius form."""
    ctx.tower._same(X.tower)
    be = ctx.tower.backend
    if X.dim == 0:
        return Subspace.full(ctx.tower)
    rows = tuple(be.combine(r, ctx.gram) for r in X.rows)
    null = be.nullspace(be.rref(rows))
    return Subspace(ctx.tower, null, _canonical=True)


def dual(ctx: DualityContext, S: Subspace, X: Subspace) -> Subspace:
    """X* = (XS)^perp."""
    if not S.contains_one():
        raise UnitNotInSpan("dual requires 1 in S")
    return perp(ctx, X.product(S))


def transporter(A: Subspace, B: Subspace) -> Subspace:
    """{x in L : x*A <= B}, the solution space of linear conditions."""
    A.tower._same(B.tower)
    tower = A.tower
    be = tower.backend
    if A.dim == 0:
        return Subspace.full(tower)
    kernel = be.nullspace(B.rows)
    if not kernel:  # B = L: no constraints
        return Subspace.full(tower)
    constraints = []
    for a in A.rows:
        mat = tower.mul_matrix(a)
        for v in kernel:
            constraints.append(_apply_columns(be, mat, v, tower.m))
    reduced = be.rref(constraints)
    return Subspace(tower, be.nullspace(reduced), _canonical=True)


def _apply_columns(be, mat_rows, v, m):
    """Row w with w[i] = <mat_rows[i], v> (matrix times column vector)."""
    if be.packed:
        w = 0
        for i, r in enumerate(mat_rows):
            if (r & v).bit_count() & 1:
                w |= 1 << i
        return w
    return tuple(be.dot(r, v) for r in mat_rows)


def saturate(S: Subspace, X: Subspace) -> Subspace:
    """X~ = {x : xS <= XS}; independent of any sigma."""
    if not S.contains_one():
        raise UnitNotInSpan("saturation requires 1 in S")
    return transporter(S, X.product(S))


def is_saturated(S: Subspace, X: Subspace) -> bool:
    return saturate(S, X) == X


def stabilizer(X: Subspace) -> Subspace:
    """H(X) = {k : kX <= X}.  By convention H({0}) = L (degenerate input)."""
    if X.dim == 0:
        return Subspace.full(X.tower)
    return transporter(X, X)


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    hypothesis_met: bool
    conclusion_holds: bool | None  # None when the hypothesis fails (vacuous)

    @property
    def violated(self) -> bool:
        return self.hypothesis_met and self.conclusion_holds is False


@dataclass(frozen=True)
class LemmaSuiteReport:
    checks: tuple

    @property
    def violations(self):
        return [c for c in self.checks if c.violated]

    @property
    def vacuous_count(self) -> int:
        return sum(1 for c in self.checks if not c.hypothesis_met)

    def ok(self) -> bool:
        return not self.violations


def lemma_suite(ctx: DualityContext, S: Subspace, X: Subspace, Y: Subspace) -> LemmaSuiteReport:
    """Evaluate the saturation/duality/stabilizer identities on one instance."""
    if not S.contains_one():
        raise UnitNotInSpan("lemma suite requires 1 in S")
    tower = ctx.tower
    m = tower.m
    full = Subspace.full(tower)
    one_space = Subspace(tower, (tower.one_row,), _canonical=True)

    def bnd(Z):
        return Z.product(S).dim - Z.dim if Z.dim else 0

    Xd = dual(ctx, S, X)
    Xdd = dual(ctx, S, Xd)
    Xddd = dual(ctx, S, Xdd)
    Xsat = saturate(S, X)
    Ysat = saturate(S, Y)
    x_saturated = Xsat == X
    y_saturated = Ysat == Y
    XY_sum = X.sum_(Y)
    XY_sum_dd = dual(ctx, S, dual(ctx, S, XY_sum))

    checks = [
        LemmaCheck("double_dual_contains", True, Xdd.contains_subspace(X)),
        LemmaCheck("triple_dual_idempotent", True, Xddd == Xd),
        LemmaCheck("dual_boundary_le", True, bnd(Xd) <= bnd(X)),
        LemmaCheck("dual_is_saturated", True, saturate(S, Xd) == Xd),
        LemmaCheck("double_dual_is_saturation", True, Xdd == Xsat),
        LemmaCheck(
            "saturated_boundary_equal",
            x_saturated,
            (bnd(X) == bnd(Xd)) if x_saturated else None,
        ),
        LemmaCheck(
            "intersection_stays_saturated",
            x_saturated and y_saturated,
            is_saturated(S, X.intersect(Y)) if x_saturated and y_saturated else None,
        ),
        LemmaCheck(
            "sum_double_dual_saturated",
            x_saturated and y_saturated,
            is_saturated(S, XY_sum_dd) if x_saturated and y_saturated else None,
        ),
    ]

    # (X+Y)** != L under: dim XS <= dim X + dim S - 1, dim(X cap Y) >= 1,
    # dim X <= dim Y* (= m - dim YS)
    hyp_sum = (
        X.product(S).dim <= X.dim + S.dim - 1
        and X.intersect(Y).dim >= 1
        and X.dim <= m - Y.product(S).dim
    )
    checks.append(
        LemmaCheck(
            "sum_double_dual_proper", hyp_sum, (XY_sum_dd != full) if hyp_sum else None
        )
    )

    HX = stabilizer(X)
    checks.append(
        LemmaCheck(
            "stabilizer_transfers_to_dual",
            x_saturated,
            (HX == stabilizer(Xd)) if x_saturated else None,
        )
    )
    hyp_stab = X.dim > 0
    subfield_ok = None
    if hyp_stab:
        subfield_ok = HX.contains_subspace(one_space) and HX.product(HX) == HX
    checks.append(LemmaCheck("stabilizer_is_subfield", hyp_stab, subfield_ok))
    return LemmaSuiteReport(tuple(checks))

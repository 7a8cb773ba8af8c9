"""Saturation, duality, stabilizers, and the lemma suite."""

import itertools
import random

import pytest

from kneserlab.errors import DegenerateForm, UnitNotInSpan
from kneserlab.operators import (
    DualityContext,
    dual,
    is_saturated,
    lemma_suite,
    perp,
    saturate,
    stabilizer,
    transporter,
)
from kneserlab.subspace import Subspace, product


def brute_saturate(S, X):
    """Independent oracle: loop over every field element (finite towers only)."""
    tower = S.tower
    XS = product(X, S)
    accepted = []
    for x in tower.all_rows():
        if all(XS.contains_row(tower.mul_rows(x, s)) for s in S.rows):
            accepted.append(x)
    return Subspace(tower, tuple(accepted))


def brute_stabilizer(X):
    tower = X.tower
    accepted = []
    for k in tower.all_rows():
        if all(X.contains_row(tower.mul_rows(k, r)) for r in X.rows):
            accepted.append(k)
    return Subspace(tower, tuple(accepted))


def one_space(tower):
    return Subspace(tower, (tower.one_row,))


def gf4_in(gf16):
    return Subspace(gf16, (gf16.one_row, gf16.backend.row_from_payloads((0, 1, 1, 0))))


def test_perp_extremes(gf16):
    ctx = DualityContext(gf16)
    assert perp(ctx, Subspace.zero(gf16)) == Subspace.full(gf16)
    assert perp(ctx, Subspace.full(gf16)) == Subspace.zero(gf16)


def test_perp_dimension_and_involution(gf16, gf64):
    rng = random.Random(21)
    for t in (gf16, gf64):
        ctx = DualityContext(t)
        for _ in range(30):
            X = Subspace(t, tuple(rng.randrange(1 << t.m) for _ in range(3)))
            Xp = perp(ctx, X)
            assert X.dim + Xp.dim == t.m
            assert perp(ctx, Xp) == X
            for x in X.rows:
                for y in Xp.rows:
                    assert ctx.pair(x, y) == 0


def test_perp_of_gf4(gf16):
    ctx = DualityContext(gf16)  # sigma = coefficient of e4
    W = gf4_in(gf16)
    Wp = perp(ctx, W)
    assert Wp.dim == 2
    for x in W.rows:
        for y in Wp.rows:
            assert ctx.pair(x, y) == 0


def test_perp_reverses_inclusion(gf64):
    rng = random.Random(22)
    ctx = DualityContext(gf64)
    for _ in range(20):
        X = Subspace(gf64, tuple(rng.randrange(64) for _ in range(2)))
        Y = X.sum_(Subspace(gf64, (rng.randrange(64),)))
        assert perp(ctx, X).contains_subspace(perp(ctx, Y))


def test_dual_extremes(gf16):
    ctx = DualityContext(gf16)
    S = Subspace(gf16, (gf16.one_row, gf16.backend.unit_row(1)))
    assert dual(ctx, S, Subspace.full(gf16)) == Subspace.zero(gf16)
    assert dual(ctx, S, Subspace.zero(gf16)) == Subspace.full(gf16)


def test_dual_of_unit_space(gf16):
    ctx = DualityContext(gf16)
    S = Subspace(gf16, (gf16.one_row, gf16.backend.unit_row(1)))
    D = dual(ctx, S, one_space(gf16))
    assert D == perp(ctx, S)
    assert D.dim == 2


def test_dual_requires_one(gf16):
    ctx = DualityContext(gf16)
    S = Subspace(gf16, (gf16.backend.unit_row(1),))
    with pytest.raises(UnitNotInSpan):
        dual(ctx, S, one_space(gf16))


def test_degenerate_sigma_rejected(gf16):
    with pytest.raises(DegenerateForm):
        DualityContext(gf16, sigma=(0, 0, 0, 0))


def test_saturate_when_product_fills_everything(gf16):
    S = Subspace(gf16, (gf16.one_row, gf16.backend.unit_row(1)))
    X = Subspace(
        gf16, (gf16.one_row, gf16.backend.unit_row(1), gf16.backend.unit_row(2))
    )
    assert product(X, S) == Subspace.full(gf16)
    assert saturate(S, X) == Subspace.full(gf16)


def test_saturate_full_space_fixed(gf16):
    S = Subspace(gf16, (gf16.one_row, gf16.backend.unit_row(1)))
    assert saturate(S, Subspace.full(gf16)) == Subspace.full(gf16)


def test_saturate_inseparable_unit_space(ins_ts):
    S = Subspace(
        ins_ts, (ins_ts.one_row, ins_ts.backend.unit_row(1), ins_ts.backend.unit_row(2))
    )
    X = one_space(ins_ts)
    assert product(X, S) == S
    assert saturate(S, X) == X  # no nontrivial stabilizer of S


def test_saturate_matches_bruteforce(gf16):
    rng = random.Random(23)
    S = Subspace(gf16, (gf16.one_row, gf16.backend.unit_row(1)))
    for _ in range(25):
        X = Subspace(gf16, tuple(rng.randrange(16) for _ in range(rng.randrange(4))))
        assert saturate(S, X) == brute_saturate(S, X)


def test_saturate_is_closure_operator(gf64):
    rng = random.Random(24)
    S = Subspace(gf64, (gf64.one_row, gf64.backend.unit_row(1)))
    for _ in range(25):
        X = Subspace(gf64, tuple(rng.randrange(64) for _ in range(2)))
        Xs = saturate(S, X)
        assert Xs.contains_subspace(X)
        assert saturate(S, Xs) == Xs
        assert product(Xs, S) == product(X, S)
        Y = X.sum_(Subspace(gf64, (rng.randrange(64),)))
        assert saturate(S, Y).contains_subspace(Xs) or not Y.contains_subspace(X)


def test_stabilizer_of_gf4_is_gf4(gf16):
    W = gf4_in(gf16)
    assert stabilizer(W) == W


def test_stabilizer_of_generic_plane_is_trivial(gf16):
    X = Subspace(gf16, (gf16.one_row, gf16.backend.unit_row(1)))
    assert stabilizer(X) == one_space(gf16)


def test_stabilizer_matches_bruteforce(gf16):
    rng = random.Random(25)
    for _ in range(25):
        X = Subspace(gf16, tuple(rng.randrange(16) for _ in range(rng.randrange(1, 4))))
        assert stabilizer(X) == brute_stabilizer(X)


def test_stabilizer_inseparable_self_stabilizing(ins_ts):
    be = ins_ts.backend
    u_plus_v = be.add(be.unit_row(1), be.unit_row(2))
    X = Subspace(ins_ts, (ins_ts.one_row, u_plus_v))
    assert stabilizer(X) == X  # (u+v)^2 = t+s lies in the base field


def test_stabilizer_zero_convention(gf16):
    assert stabilizer(Subspace.zero(gf16)) == Subspace.full(gf16)


def test_transporter_definition(gf16):
    rng = random.Random(26)
    for _ in range(15):
        A = Subspace(gf16, tuple(rng.randrange(16) for _ in range(2)))
        B = Subspace(gf16, tuple(rng.randrange(16) for _ in range(3)))
        T = transporter(A, B)
        for x in gf16.all_rows():
            expected = all(
                B.contains_row(gf16.mul_rows(x, a)) for a in A.rows
            )
            assert T.contains_row(x) == expected


def sigma_choices(tower):
    base = tower.base
    m = tower.m
    zero, one = base.zero(), base.one()
    sigmas = [
        tuple(one if i == m - 1 else zero for i in range(m)),
        tuple(one if i == 0 else zero for i in range(m)),
        tuple(one for _ in range(m)),
    ]
    return sigmas


def all_subspaces_gf2(tower):
    from kneserlab.cells import enumerate_subspaces

    return list(enumerate_subspaces(tower))


def test_lemma_suite_exhaustive_small():
    from kneserlab.tower import finite_field

    t = finite_field(2, 3)
    subs = []
    for r in range(4):
        for combo in itertools.combinations(range(1, 8), r):
            subs.append(Subspace(t, combo))
    subs = sorted(set(subs), key=lambda s: (s.dim, s.rows))
    S = Subspace(t, (t.one_row, t.backend.unit_row(1)))
    for sigma in sigma_choices(t):
        ctx = DualityContext(t, sigma=sigma)
        for X in subs:
            for Y in subs:
                report = lemma_suite(ctx, S, X, Y)
                assert report.ok(), (sigma, X, Y, report.violations)


def test_lemma_suite_inseparable_sample(ins_ts):
    rng = random.Random(27)
    S = Subspace(
        ins_ts,
        (ins_ts.one_row, ins_ts.backend.unit_row(1), ins_ts.backend.unit_row(3)),
    )
    for i in range(15):
        X = Subspace(ins_ts, tuple(ins_ts.random_row(rng, 1) for _ in range(2)))
        Y = Subspace(ins_ts, tuple(ins_ts.random_row(rng, 1) for _ in range(2)))
        sigma = tuple(ins_ts.base.random(rng, 1) for _ in range(4))
        if all(ins_ts.base.is_zero(c) for c in sigma):
            continue
        ctx = DualityContext(ins_ts, sigma=sigma)
        report = lemma_suite(ctx, S, X, Y)
        assert report.ok(), (i, report.violations)


def test_sigma_independence_of_saturation_and_boundary(gf16):
    rng = random.Random(28)
    S = Subspace(gf16, (gf16.one_row, gf16.backend.unit_row(1)))
    ctxs = [DualityContext(gf16, sigma=s) for s in sigma_choices(gf16)]
    for _ in range(20):
        X = Subspace(gf16, tuple(rng.randrange(16) for _ in range(2)))
        duals = [dual(c, S, X) for c in ctxs]
        # dual spaces vary with sigma but their dimension does not
        assert len({d.dim for d in duals}) == 1
        if is_saturated(S, X):
            bnds = [product(d, S).dim - d.dim for d in duals]
            assert len(set(bnds)) == 1

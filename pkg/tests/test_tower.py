"""Tower construction, element arithmetic, generated subfields."""

import random

import pytest

from kneserlab import gfpoly
from kneserlab.errors import (
    DivisionByZero,
    ReducibleModulus,
    TowerInvariantError,
    TowerMismatch,
)
from kneserlab.scalar import FieldDescriptor
from kneserlab.subspace import Subspace
from kneserlab.tower import (
    SubfieldEmbedding,
    TowerSpec,
    compose,
    element_inverse,
    element_mul,
    finite_field,
    generated_subfield,
    inseparable,
    polynomial_extension,
)


def test_gf16_tensor_power_basis(gf16):
    # e2 = a, e2*e2 = a^2 = e3
    assert gf16.tensor[1][1] == ((0, 0, 1, 0))
    assert gf16.m == 4


def test_gf16_alpha_times_alpha_cubed(gf16):
    # oracle: x * x^3 = x^4 reduces to x+1 mod x^4+x+1
    red = gfpoly.mod((0, 0, 0, 0, 1), (1, 1, 0, 0, 1), 2)
    assert red == (1, 1)
    a = gf16.basis_element(1)
    a3 = gf16.basis_element(3)
    assert element_mul(a, a3) == gf16.element([1, 1, 0, 0])


def test_unit_law_everywhere(gf16, ins_ts):
    rng = random.Random(1)
    for t in (gf16, ins_ts):
        one = t.one()
        for _ in range(20):
            b = t.element([t.base.random(rng, 1) for _ in range(t.m)])
            assert element_mul(one, b) == b


def test_inseparable_t_defining_relation(ins_t):
    u = ins_t.basis_element(1)
    t_scalar = ins_t.base.parse("t")
    expected = ins_t.element([t_scalar, ins_t.base.zero()])
    assert element_mul(u, u) == expected


def test_inseparable_ts_uv_squared(ins_ts):
    # (uv)^2 = u^2 v^2 = ts, derived from the relation table
    uv = ins_ts.basis_element(3)
    ts = ins_ts.base.parse("t*s")
    zero = ins_ts.base.zero()
    assert element_mul(uv, uv) == ins_ts.element([ts, zero, zero, zero])
    assert ins_ts.m == 4
    assert ins_ts.labels == ("1", "u", "v", "u*v")


def test_gf16_inverse_of_alpha(gf16):
    a = gf16.basis_element(1)
    inv = element_inverse(a)
    assert inv == gf16.element([1, 0, 0, 1])  # a^3 + 1
    assert element_mul(a, inv) == gf16.one()


def test_inverse_of_one_and_zero(gf16):
    assert element_inverse(gf16.one()) == gf16.one()
    with pytest.raises(DivisionByZero):
        element_inverse(gf16.zero())


def test_inseparable_inverse_of_u(ins_t):
    u = ins_t.basis_element(1)
    inv = element_inverse(u)
    inv_t = ins_t.base.parse("1/t")
    assert inv == ins_t.element([ins_t.base.zero(), inv_t])
    assert element_mul(u, inv) == ins_t.one()


def test_random_inverses_multiply_back(gf16, gf64, ins_ts):
    rng = random.Random(9)
    for t in (gf16, gf64, ins_ts):
        for _ in range(25):
            row = t.random_row(rng, degree_bound=1)
            if t.backend.is_zero(row):
                continue
            inv = t.inverse_row(row)
            assert t.mul_rows(row, inv) == t.one_row


def test_generated_subfield_of_alpha_is_everything(gf16):
    S = Subspace.from_elements(gf16, [gf16.one(), gf16.basis_element(1)])
    assert generated_subfield(S) == Subspace.full(gf16)


def test_generated_subfield_of_omega_is_gf4(gf16):
    # omega = a^2 + a satisfies omega^2 = omega + 1, so F(span{1, omega}) = GF(4)
    omega = gf16.element([0, 1, 1, 0])
    osq = element_mul(omega, omega)
    assert osq == gf16.element([1, 1, 1, 0])  # omega + 1
    S = Subspace.from_elements(gf16, [gf16.one(), omega])
    F = generated_subfield(S)
    assert F == S
    assert F.dim == 2


def test_generated_subfield_inseparable_closed(ins_ts):
    S = Subspace.from_elements(ins_ts, [ins_ts.one(), ins_ts.basis_element(1)])
    assert generated_subfield(S) == S


def test_generated_subfield_idempotent_and_monotone(gf64):
    rng = random.Random(3)
    for _ in range(10):
        rows = [gf64.one_row, gf64.random_row(rng), gf64.random_row(rng)]
        S = Subspace(gf64, tuple(rows))
        F = generated_subfield(S)
        assert generated_subfield(F) == F
        S2 = Subspace(gf64, tuple(rows + [gf64.random_row(rng)]))
        assert generated_subfield(S2).contains_subspace(F)


def test_subfield_lattice_of_gf16(gf16):
    # subfields of GF(2^4) have dimensions dividing 4: {1, 2, 4}
    dims = set()
    for x in gf16.all_rows():
        S = Subspace(gf16, (gf16.one_row, x))
        dims.add(generated_subfield(S).dim)
    assert dims == {1, 2, 4}


def test_subfield_lattice_of_gf64(gf64):
    dims = set()
    for x in gf64.all_rows():
        S = Subspace(gf64, (gf64.one_row, x))
        dims.add(generated_subfield(S).dim)
    assert dims == {1, 2, 3, 6}


def test_compose_gf4_gf8_gives_gf64():
    t = compose(finite_field(2, 2), finite_field(2, 3))
    assert t.m == 6
    rng = random.Random(5)
    for _ in range(10):
        row = t.random_row(rng)
        if t.backend.is_zero(row):
            continue
        assert t.mul_rows(row, t.inverse_row(row)) == t.one_row


def test_compose_gf4_gf4_rejected():
    with pytest.raises(TowerInvariantError):
        compose(finite_field(2, 2), finite_field(2, 2))


def test_mixed_separable_inseparable_composition(ins_t):
    # adjoin a root of y^2+y+1 on top of GF(2)(t)(u): separable times inseparable
    base = ins_t.base
    sep = polynomial_extension(
        base, [base.one(), base.one(), base.one()], gen_label="w"
    )
    t = compose(ins_t, sep)
    assert t.m == 4
    rng = random.Random(2)
    for _ in range(5):
        row = t.random_row(rng, degree_bound=1)
        if t.backend.is_zero(row):
            continue
        assert t.mul_rows(row, t.inverse_row(row)) == t.one_row


def test_tower_mismatch_detected(gf16, gf64):
    with pytest.raises(TowerMismatch):
        element_mul(gf16.one(), gf64.one())


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        finite_field(2, 4, modulus=(1, 0, 1, 0, 1))  # x^4+x^2+1 = (x^2+x+1)^2


def test_json_roundtrip(gf16, ins_ts):
    for t in (gf16, ins_ts):
        data = t.to_json()
        t2 = TowerSpec.from_json(data)
        assert t2.tensor == t.tensor
        assert t2.base == t.base
        assert t2.sigma_default == t.sigma_default
        assert t2.content_hash() == t.content_hash()


def test_fault_injection_breaks_validation(gf16):
    bad = gf16.with_tensor_fault(1, 1, 0)
    with pytest.raises(TowerInvariantError):
        bad.validate()


def test_subfield_embedding_roundtrip(gf16):
    W = Subspace(gf16, (gf16.one_row, gf16.backend.row_from_payloads((0, 1, 1, 0))))
    emb = SubfieldEmbedding(gf16, W)
    assert emb.sub.m == 2
    # multiplication commutes with the embedding
    rng = random.Random(8)
    for _ in range(10):
        a = emb.sub.random_row(rng)
        b = emb.sub.random_row(rng)
        prod_inside = emb.sub.mul_rows(a, b)
        prod_outside = gf16.mul_rows(emb.from_sub_row(a), emb.from_sub_row(b))
        assert emb.from_sub_row(prod_inside) == prod_outside
    # subspace transport round-trips
    X = Subspace(emb.sub, (emb.sub.one_row,))
    assert emb.to_sub(emb.from_sub(X)) == X


def test_subfield_embedding_requires_closure(gf16):
    X = Subspace(gf16, (gf16.one_row, gf16.backend.unit_row(1)))
    with pytest.raises(TowerInvariantError):
        SubfieldEmbedding(gf16, X)

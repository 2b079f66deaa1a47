import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unitscheme.catalog import lambda_param
from unitscheme.algebra import AlgebraError
from unitscheme.hopf import convolution
from unitscheme.unitgroup import (
    HMorphisms,
    build_unit_group,
    closed_form_comult,
    determinant_suite,
    determinant_D,
    leibniz_determinant,
    oracle_comult,
    unit_maps_suite,
    tname,
    verify_comultiplication,
)

MODES = ["generic", "zero", "1"]


def test_variable_names():
    assert tname(0, 0) == "T_1" and tname(1, 0) == "T_X" and tname(2, 0) == "T_{X^2}"
    assert tname(1, 1) == "T_{XY}" and tname(2, 2) == "T_{X^2Y^2}"


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("mode", MODES)
def test_closed_form_comultiplication_matches_direct_expansion(p, mode):
    U = build_unit_group(lambda_param(p, mode))
    for r1, r2 in U.basis:
        assert closed_form_comult(U, r1, r2) == oracle_comult(U, r1, r2)


def test_comultiplication_spot_check_at_p5_is_seeded():
    a = verify_comultiplication(lambda_param(5), seed=3)
    b = verify_comultiplication(lambda_param(5), seed=3)
    assert a.ok and [c.name for c in a.checks] == [c.name for c in b.checks]
    assert len({c.name for c in a.checks if "closed-form" in c.name}) == 10


def test_triangular_and_diagonal():
    U = build_unit_group(lambda_param(3))
    assert U.rep.is_upper_triangular()
    for j, (r1, _) in enumerate(U.rep.basis):
        assert U.rep.entry(j, j, U.T) == U.diag(r1)


def test_determinant_closed_form_p3():
    lam = lambda_param(3)
    U = build_unit_group(lam)
    det, closed = determinant_D(U)
    T1, TX, TX2 = U.t(0), U.t(1), U.t(2)
    assert det == closed == T1 ** 3 * (T1 + lam * TX) ** 3 * (T1 + 2 * lam * TX + lam ** 2 * TX2) ** 3


@pytest.mark.parametrize("mode", MODES)
def test_permutation_sum_oracle_at_p2(mode):
    U = build_unit_group(lambda_param(2, mode))
    assert leibniz_determinant(U) == determinant_D(U)[0]


def test_determinant_report_renders_factored_D():
    rep = determinant_suite(lambda_param(3))
    assert rep.ok
    note = rep.by_name("D equals closed form").note
    assert note.count("^3") == 3 and "T_{X^2}" in note


@pytest.mark.parametrize("p", [2, 3])
@given(st.lists(st.integers(0, 4), min_size=9, max_size=9))
def test_scalar_points_with_unit_diagonal_are_convolution_invertible(p, vals):
    lam = lambda_param(p, "1")
    U = build_unit_group(lam)
    R = U.G.base
    n = len(U.basis)
    point = U.point([R.coerce(v % p) for v in (vals * 3)[:n]])
    if not U.point_is_unit(point):
        with pytest.raises(AlgebraError):
            U.point_inverse(point)
        return
    inv = U.point_inverse(point)
    one = {b: R.coerce(1 if b == (0, 0) else 0) for b in U.basis}
    assert convolution(point, inv).values == one
    assert convolution(inv, point).values == one


@pytest.mark.parametrize("p", [2, 3, 5])
def test_unit_maps_zero_lambda_all_green(p):
    assert unit_maps_suite(lambda_param(p, "zero")).ok


@pytest.mark.parametrize("p", [2, 3, 5])
def test_unit_maps_generic_only_sigma_fails(p):
    rep = unit_maps_suite(lambda_param(p))
    assert [c.name for c in rep.failures()] == ["σ̃# is a bialgebra hom"]
    assert rep.failures()[0].witness is not None


def test_printed_chi_fails_on_Y():
    M = HMorphisms(lambda_param(3))
    from unitscheme.hopf import check_bialgebra_hom
    ok, witness = check_bialgebra_hom(M.chi_printed, M.H, M.U.hopf)
    assert not ok and witness[0] == "Y"
    assert check_bialgebra_hom(M.chi, M.H, M.U.hopf)[0]


def test_sigma_fails_exactly_through_truncation():
    # σ̃ composed with the quotient to G is comultiplicative: the failure lives in X^p terms
    lam = lambda_param(3)
    M = HMorphisms(lam)
    e = M.e
    for nm in M.U.names:
        x = M.U.carrier.gen(nm)
        assert e(M.sigma(x)) == M.U.embedding(x)


def test_basis_order_matches_index():
    U = build_unit_group(lambda_param(2))
    assert list(itertools.islice(U.names, 4)) == ["T_1", "T_X", "T_Y", "T_{XY}"]

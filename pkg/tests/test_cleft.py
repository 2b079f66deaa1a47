import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from unitscheme.catalog import lambda_param
from unitscheme.cleft import (
    cleft_data,
    coinvariant_generator_suite,
    coinvariant_generators,
    mixed_indices,
    cleaving_suite,
    phi_cap_inverse,
    presentations,
    projection_P,
    presentation_suite,
    coinvariant_presentation_suite,
    zname,
)
from unitscheme.hopf import convolution, convolution_unit
from unitscheme.unitgroup import tname

MODES = ["generic", "zero"]


@pytest.fixture(scope="module", params=[(2, "generic"), (3, "generic"), (3, "zero")],
                ids=lambda x: f"p{x[0]}-{x[1]}")
def C(request):
    p, mode = request.param
    return cleft_data(lambda_param(p, mode))


def test_printed_inverse_values(C):
    lam = C.lam
    T1, TX, TY = C.t(0), C.t(1), C.t(0, 1)
    assert C.phi_inv.values[(0, 1)] == -TY / (T1 * (T1 + lam * TX))
    assert C.phi_inv.values[(1, 0)] == -TX / (T1 * (T1 + lam * TX))
    assert C.phi_inv.values[(0, 0)] == 1 / T1


def test_convolution_inverse_two_sided(C):
    unit = convolution_unit(C.G, C.S)
    assert convolution(C.phi, C.phi_inv) == unit
    assert convolution(C.phi_inv, C.phi) == unit


def test_projection_examples(C):
    T1, TX, TY = C.t(0), C.t(1), C.t(0, 1)
    assert projection_P(C, T1) == C.S.one
    assert projection_P(C, TX).is_zero()
    assert projection_P(C, TY).is_zero()
    # coinvariants are scaled by φ⁻¹(1) = 1/T_1
    assert projection_P(C, TY ** C.p) == TY ** C.p / T1


def test_coaction_is_id_tensor_embedding_of_comultiplication(C):
    t = C.comodule.target
    for b in C.G.basis:
        want = t.zero
        for coef, b1, b2 in C.G.coproduct_table[b]:
            want = want + t.coerce(coef) * t.pure(C.phi.values[b1], C.G.basis_element(b2))
        assert C.rho(C.phi.values[b]) == want


def _random(C, seed):
    return C.random_element(random.Random(seed))


@given(st.integers(0, 10 ** 6))
def test_decomposition_roundtrip_and_coinvariance(seed):
    C = cleft_data(lambda_param(2))
    x = _random(C, seed)
    dec = phi_cap_inverse(C, x)
    total = C.S.zero
    for coef, b in dec:
        assert C.is_coinvariant(coef)
        total = total + coef * C.phi.values[b]
    assert total == x


@given(st.integers(0, 10 ** 6))
def test_projection_lands_in_coinvariants(seed):
    C = cleft_data(lambda_param(3))
    x = _random(C, seed)
    assert C.is_coinvariant(projection_P(C, x))


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_projection_is_linear_over_coinvariants(s1, s2):
    C = cleft_data(lambda_param(2))
    x, y = _random(C, s1), _random(C, s2)
    c = C.t(0) ** 2 + C.t(1) ** 2 * C.lam
    assert projection_P(C, c * x + y) == c * projection_P(C, x) + projection_P(C, y)


def test_listed_generators_coinvariant_p3():
    C = cleft_data(lambda_param(3))
    labels = [lbl for lbl, _ in coinvariant_generators(C)]
    assert "P(T_X^2)" in labels and "1/(T_1^p+λ^p T_X^p)" in labels
    for _, x in coinvariant_generators(C):
        assert C.is_coinvariant(x)


def test_p2_generator_list_degenerates():
    C = cleft_data(lambda_param(2))
    labels = [lbl for lbl, _ in coinvariant_generators(C)]
    assert labels == ["T_1", "T_X^p", "T_Y^p", "P(T_X^1 T_Y^1)", "1/T_1", "1/(T_1^p+λ^p T_X^p)"]


def test_denominator_identity_p3():
    C = cleft_data(lambda_param(3))
    lam = C.lam
    T1, TX, TX2 = C.t(0), C.t(1), C.t(2)
    lhs = (T1 + lam ** 2 * C.P_powers[2]) * (T1 + 2 * lam * TX + lam ** 2 * TX2)
    assert lhs == (T1 + lam * TX) ** 2


def test_Q2_membership_p3():
    C = cleft_data(lambda_param(3))
    assert C.S.uses_only(C.Q(2), ["T_1", "T_X"], C.dens_using(["T_1", "T_X"]))


@pytest.mark.parametrize("mode", MODES)
def test_top_coefficient_of_mixed_projection(mode):
    C = cleft_data(lambda_param(3, mode))
    d1 = C.t(0) + C.t(1) * C.lam
    for b in mixed_indices(3):
        r1, r2 = b
        want = -d1 ** (r1 + r2) / (C.d(r1) * C.d((r1 + r2) % 3))
        assert C.top_coefficient(C.P_mixed[b], tname(r1, r2)) == want


def test_literal_membership_claim_is_false_at_p3():
    rep = coinvariant_generator_suite(lambda_param(3))
    failing = {c.name for c in rep.failures()}
    assert failing == {f"Q'_{r1}{r2} lies in the subring of Y-degree < {r2}"
                       for r1, r2 in [(1, 1), (2, 1), (1, 2), (2, 2)]}
    assert all(c.witness for c in rep.failures())


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("mode", MODES)
def test_cleaving_suite_green(p, mode):
    rep = cleaving_suite(lambda_param(p, mode), seed=7)
    assert rep.ok, [c.name for c in rep.failures()]


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("mode", MODES)
def test_isomorphism_roundtrips(p, mode):
    rep = presentation_suite(lambda_param(p, mode))
    assert rep.ok, [c.name for c in rep.failures()]
    assert sum("fixes" in c.name for c in rep.checks) == 2 * p * p


def test_w2_maps_to_the_printed_reciprocal():
    Pr = presentations(lambda_param(3))
    W, lam = Pr.W, Pr.lam
    Z = lambda n: W.gen(n)  # noqa: E731
    chi_TX2 = Pr.chi.images["T_{X^2}"]
    lhs = 1 / (Z("Z_1") + 2 * lam * Z("Z_X") + lam ** 2 * chi_TX2)
    assert lhs == (Z("Z_1") + lam ** 2 * Z("Z_{X^2}")) / (Z("Z_1") + lam * Z("Z_X")) ** 2


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("mode", MODES)
def test_coinvariant_presentation_suite_green(p, mode):
    rep = coinvariant_presentation_suite(lambda_param(p, mode))
    assert rep.ok, [c.name for c in rep.failures()]


def test_omega_images():
    Pr = presentations(lambda_param(3))
    W = Pr.W
    assert Pr.omega.images[zname(1, 0)] == W.gen("Z_X") ** 3
    assert Pr.omega.images[zname(0, 1)] == W.gen("Z_Y") ** 3
    assert Pr.omega.images[zname(1, 1)] == W.gen("Z_{XY}")

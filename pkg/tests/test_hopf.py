import pytest
from hypothesis import given
from hypothesis import strategies as st

from unitscheme.algebra import AlgebraHom, PresentedAlgebra
from unitscheme.catalog import TAGS, build_scheme, lambda_param
from unitscheme.hopf import (
    check_hopf_axioms,
    convolution,
    convolution_inverse,
    convolution_unit,
    is_multiplicative,
    point_identity,
    point_invert,
    point_multiply,
    point_to_linear,
)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("mode", ["generic", "zero"])
@pytest.mark.parametrize("tag", TAGS)
def test_axioms_hold_on_every_generator(tag, mode, p):
    rep = check_hopf_axioms(build_scheme(tag, lambda_param(p, mode)))
    assert rep.ok, rep.to_text()
    assert not [c for c in rep.checks if c.status != "pass"]


def test_additive_coproduct_is_primitive():
    Ga = build_scheme("Ga", lambda_param(3))
    sq = Ga.square
    assert Ga.comult.images["T"] == sq.gen("T[0]") + sq.gen("T[1]")


def test_curly_group_law():
    lam = lambda_param(3)
    Gc = build_scheme("G_curly", lam)
    sq = Gc.square
    T0, T1 = sq.gen("T[0]"), sq.gen("T[1]")
    assert Gc.comult.images["T"] == T0 + T1 + lam * T0 * T1


def test_broken_comultiplication_is_caught():
    from unitscheme.hopf import HopfStructure
    lam = lambda_param(2)
    A = build_scheme("Ga", lam).carrier
    sq = build_scheme("Ga", lam).square
    T0, T1 = sq.gen("T[0]"), sq.gen("T[1]")
    bad = HopfStructure(A, {"T": T0 + T1 + T0 * T1 * T1}, {"T": 0}, {"T": -A.gen("T")})
    rep = check_hopf_axioms(bad)
    assert not rep.ok
    assert any("coassociativity" in c.name for c in rep.failures())


def _truncated_points_algebra(p):
    lam = lambda_param(p)
    return PresentedAlgebra(lam.ring, ["e", "f"], {"e": p, "f": p}, name="B")


def _points(B, G):
    gens = [B.gen("e"), B.gen("f")]

    @st.composite
    def build(draw):
        imgs = {}
        for g in G.carrier.gens:
            v = B.zero
            for h in gens:
                for k in (1, 2):
                    v = v + B.coerce(draw(st.integers(0, B.p - 1))) * h ** k
            imgs[g] = v
        return AlgebraHom(G.carrier, B, imgs, name="x")

    return build()


@pytest.mark.parametrize("p", [2, 3])
@given(data=st.data())
def test_point_group_laws_on_G(p, data):
    G = build_scheme("G", lambda_param(p))
    B = _truncated_points_algebra(p)
    x, y, z = (data.draw(_points(B, G)) for _ in range(3))
    e = point_identity(G, B)
    mul = lambda a, b: point_multiply(G, a, b)  # noqa: E731
    same = lambda a, b: all(a.images[g] == b.images[g] for g in G.carrier.gens)  # noqa: E731
    assert same(mul(mul(x, y), z), mul(x, mul(y, z)))
    assert same(mul(e, x), x) and same(mul(x, e), x)
    assert same(mul(x, point_invert(G, x)), e)


@pytest.mark.parametrize("p", [2, 3])
@given(data=st.data())
def test_convolution_of_points_is_the_group_law(p, data):
    G = build_scheme("G", lambda_param(p))
    B = _truncated_points_algebra(p)
    x, y = data.draw(_points(B, G)), data.draw(_points(B, G))
    fx, fy = point_to_linear(G, x), point_to_linear(G, y)
    prod = convolution(fx, fy)
    assert prod == point_to_linear(G, point_multiply(G, x, y))
    assert is_multiplicative(prod)


@pytest.mark.parametrize("p", [2, 3])
def test_convolution_inverse_of_a_point(p):
    G = build_scheme("G", lambda_param(p))
    B = _truncated_points_algebra(p)
    x = AlgebraHom(G.carrier, B, {"X": B.gen("e"), "Y": B.gen("f") + B.gen("e") * B.gen("f")})
    f = point_to_linear(G, x)
    g = convolution_inverse(f)
    unit = convolution_unit(G, B)
    assert convolution(f, g) == unit and convolution(g, f) == unit
    assert g == point_to_linear(G, point_invert(G, x))

import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import sympy_poly
from unitscheme.coeffring import ParamRing, binom_mod_p, is_prime, t_divexact

PRIMES = [2, 3, 5, 7]


@given(st.integers(0, 60), st.integers(0, 60), st.sampled_from(PRIMES))
def test_lucas_binomial_matches_integer_binomial(n, k, p):
    assert binom_mod_p(n, k, p) == math.comb(n, k) % p


@given(st.integers(-5, 500))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def polys(ring, max_terms=4, max_exp=3):
    n = len(ring.symbols)
    mono = st.tuples(*[st.integers(0, max_exp)] * n)
    return st.dictionaries(mono, st.integers(1, ring.p - 1), max_size=max_terms).map(
        lambda d: ring(0) + sum((ring(c) * _mono(ring, m) for m, c in d.items()), ring(0)))


def _mono(ring, m):
    out = ring(1)
    for s, e in zip(ring.symbols, m):
        out = out * ring.symbol(s) ** e
    return out


@pytest.mark.parametrize("p", [2, 3, 5])
@given(data=st.data())
def test_ring_ops_agree_with_sympy(p, data):
    ring = ParamRing(p, ("λ", "a"))
    x = data.draw(polys(ring))
    y = data.draw(polys(ring))
    P = lambda f: sympy_poly(f.terms, ring.symbols, p)  # noqa: E731
    assert P(x + y) == P(x) + P(y)
    assert P(x - y) == P(x) - P(y)
    assert P(x * y) == P(x) * P(y)
    assert P(x ** 3) == P(x) ** 3


@pytest.mark.parametrize("p", [2, 3, 5])
@given(data=st.data())
def test_exact_division_recovers_factor(p, data):
    ring = ParamRing(p, ("λ", "a"))
    x = data.draw(polys(ring))
    y = data.draw(polys(ring))
    if not y:
        return
    q = t_divexact((x * y).terms, y.terms, p)
    assert q is not None and ring(0) + type(x)(ring, q) == x


def test_freshman_dream():
    ring = ParamRing(3, ("λ", "a"))
    lam, a = ring.symbol("λ"), ring.symbol("a")
    assert (a + lam) ** 3 == a ** 3 + lam ** 3


def test_scalar_units():
    ring = ParamRing(5, ("λ",))
    assert ring(2).is_unit() and not ring(0).is_unit()
    assert not ring.symbol("λ").is_unit()
    assert ring(7).scalar() == 2

import pytest
from hypothesis import given
from hypothesis import strategies as st

from booklinks import LaurentPoly

polys = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=5).map(LaurentPoly)


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0


@given(polys, st.integers(-3, 3))
def test_evaluation_is_a_homomorphism(p, x):
    if x == 0:
        return
    from fractions import Fraction

    x = Fraction(x)
    q = p * p
    assert q.evaluate(x) == p.evaluate(x) ** 2


@given(polys, st.integers(1, 4))
def test_substitute_then_divide(p, k):
    assert p.substitute_power(k).divide_exponents(k) == p


def test_zero_terms_dropped_and_printing():
    p = LaurentPoly({3: 0, 1: 2, -2: -1}, "t")
    assert p.terms == {1: 2, -2: -1}
    assert str(p) == "2*t - t^-2"
    assert str(LaurentPoly()) == "0"
    assert LaurentPoly({0: 1}) == 1


def test_negative_powers():
    a = LaurentPoly({1: 1})
    assert a ** -2 == LaurentPoly({-2: 1})
    assert (LaurentPoly({3: -1}) ** -1) == LaurentPoly({-3: -1})
    with pytest.raises(ValueError):
        (a + 1) ** -1

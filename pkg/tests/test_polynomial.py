from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xherm.hermite import hermite
from xherm.polynomial import RationalPoly, wronskian

coeff = st.fractions(max_denominator=50, min_value=-20, max_value=20)
polys = st.lists(coeff, min_size=0, max_size=6).map(RationalPoly)


def test_zero_and_degree():
    assert RationalPoly([]).is_zero()
    assert RationalPoly([]).degree == RationalPoly.ZERO_DEGREE
    p = RationalPoly([1, 0, Fraction(2, 3)])
    assert p.degree == 2
    assert p.leading_coefficient == Fraction(2, 3)


def test_json_is_exact_and_sorted():
    p = RationalPoly({3: Fraction(2, 3), 1: 1})
    assert p.to_json_dict() == {"1": "1", "3": "2/3"}
    assert list(p.to_json_dict()) == ["1", "3"]


@given(polys, polys)
def test_product_rule(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@given(polys, polys, coeff)
def test_exact_evaluation_is_a_ring_map(p, q, x):
    assert (p * q).eval_exact(x) == p.eval_exact(x) * q.eval_exact(x)
    assert (p + q).eval_exact(x) == p.eval_exact(x) + q.eval_exact(x)


@settings(max_examples=30)
@given(polys)
def test_float_matches_exact(p):
    x = Fraction(3, 7)
    assert p(float(x)) == pytest.approx(float(p.eval_exact(x)), rel=1e-12, abs=1e-12)


def test_complex_vectorized_eval():
    p = RationalPoly([1, 2, 3])
    z = np.array([1j, 2 + 1j])
    np.testing.assert_allclose(p(z), 1 + 2 * z + 3 * z**2)


def test_wronskian_two_monomials():
    x, x2 = RationalPoly([0, 1]), RationalPoly([0, 0, 1])
    assert wronskian([x, x2]) == RationalPoly([0, 0, 1])


def test_wronskian_h1_h2():
    assert wronskian([hermite(1), hermite(2)]) == RationalPoly([4, 0, 8])


def test_wronskian_of_dependent_set_vanishes():
    p = RationalPoly([1, 2])
    assert wronskian([p, p * 3]).is_zero()


def test_parity():
    assert hermite(4).parity() == 0
    assert hermite(5).parity() == 1
    assert RationalPoly([1, 1]).parity() is None

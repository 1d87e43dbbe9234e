import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xherm import series as S
from xherm.errors import PrecisionWarning, XhermError
from xherm.exceptional import hhat
from xherm.hermite import AnalyticFn
from xherm.verify import ode_residual


def test_first_beta_coefficients():
    # c_0 = 1, c_1 = 1, c_2 = -n, c_3 = -(n-5)/3, c_4 = (n^2-10n)/6
    for n in range(6):
        c = S.beta_coefficients(n, 6)
        assert c[:5] == [1, 1, -n, Fraction(-(n - 5), 3), Fraction(n * n - 10 * n, 6)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 30), st.integers(3, 40))
def test_recurrence_matches_closed_form(n, k):
    assert S.beta_coefficients(n, k)[k] == S.closed_form_coefficient(n, k)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_nu_is_hhat_over_m1(n):
    assert S.nu(n).as_poly() * S.m1(n) == hhat(n)


@pytest.mark.parametrize("n", [0, 4, 6, 8, 10])
def test_mu_is_hhat_over_m2(n):
    assert S.mu(n).as_poly() * S.m2(n) == hhat(n)


def test_polynomial_detection():
    assert S.nu(7).is_polynomial and S.nu(7).degree == 7
    assert not S.nu(4).is_polynomial and S.nu(4).degree is None
    assert not S.mu(2).is_polynomial
    assert not S.nu(1).is_polynomial
    assert not S.beta(3).is_polynomial


def test_truncation_degree():
    assert S.truncation_degree("nu", 5) == 5
    assert S.truncation_degree("mu", 4) == 4
    assert S.truncation_degree("nu", 4) is None


@pytest.mark.parametrize("kind,n", [("beta", 3), ("mu", 3), ("nu", 6), ("nu", 1), ("mu", 2)])
def test_series_solve_the_equation(kind, n):
    sol = S.series_for(kind, n, 80)
    z = np.array([0.4 + 0.2j, -0.9 + 0.1j, 1.2])
    assert np.max(np.abs(ode_residual(sol, n, z))) < 1e-10


def test_beta_is_mu_plus_nu():
    z = 0.3 - 0.6j
    assert complex(S.beta(4, 60)(z)) == pytest.approx(complex(S.mu(4, 60)(z) + S.nu(4, 60)(z)), rel=1e-14)


def test_alpha_dispatch():
    assert isinstance(S.alpha(1), AnalyticFn)
    a = S.alpha(5)
    assert a.as_poly() == hhat(5) * S.m3(5)
    assert a.as_poly() == S.nu(5).as_poly()


def test_constants():
    assert S.m1(3) == 12
    assert S.m2(4) == -4
    assert S.m2(0) == 1
    assert S.m3(1) == 1 and S.m3(3) == Fraction(1, 12)
    with pytest.raises(XhermError):
        S.m1(4)
    with pytest.raises(XhermError):
        S.m2(2)


@pytest.mark.parametrize("n", [0, 4, 6, 8, 10, 12])
def test_m2_gamma_form(n):
    assert S.m2_gamma(n) == pytest.approx(float(S.m2(n)), rel=1e-12)


def test_tail_bound_and_warning():
    sol = S.nu(4, 10)
    assert sol.tail_bound(0.1) < 1e-12
    assert sol.tail_bound(3.0) > 1e-6
    with pytest.warns(PrecisionWarning):
        S.evaluate_checked(sol, 3.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        S.evaluate_checked(S.nu(4, 60), 0.5)


def test_derivative_orders():
    sol = S.nu(3)
    assert complex(sol(1.0, 1)) == pytest.approx(1 + 2.0)
    assert complex(sol.derivative(1.0, 2)) == pytest.approx(4.0)


def test_unknown_kind():
    with pytest.raises(XhermError):
        S.series_for("gamma", 3)

"""Generalized power-series solutions of the exceptional Hermite equation.

The equation is ``w'' - 2(z + 4z/(1+2z^2)) w' + 2n w = 0``. Its solution
through ``c_0 = c_1 = 1`` is ``beta_n = mu_n + nu_n`` where ``mu_n`` collects
the even powers and ``nu_n`` the odd ones.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import PrecisionWarning, XhermError
from .exceptional import hhat
from .hermite import AnalyticFn, hhat_gap_fn
from .polynomial import RationalPoly
from .special import gamma_half_integer_exact

KINDS = ("beta", "mu", "nu", "alpha")
ZERO_RUN = 8


def default_truncation(n: int) -> int:
    return max(n + 10, 40)


def _recurrence(n: int, K: int, c0: Fraction, c1: Fraction) -> list[Fraction]:
    """``c_k = [-2((k-2)(k-8)+n) c_{k-2} - 4(n-k+4) c_{k-4}] / (k(k-1))``.

    Valid from ``k = 2`` with ``c_{-1} = c_{-2} = 0``; reproduces
    ``c_2 = -n c_0`` and ``c_3 = -(n-5) c_1 / 3``.
    """
    c = [Fraction(0)] * (K + 1)
    if K >= 0:
        c[0] = Fraction(c0)
    if K >= 1:
        c[1] = Fraction(c1)
    for k in range(2, K + 1):
        acc = -2 * ((k - 2) * (k - 8) + n) * c[k - 2]
        if k >= 4:
            acc -= 4 * (n - k + 4) * c[k - 4]
        c[k] = acc / (k * (k - 1))
    return c


@lru_cache(maxsize=256)
def _beta_cached(n: int, K: int) -> tuple[Fraction, ...]:
    return tuple(_recurrence(n, K, Fraction(1), Fraction(1)))


def beta_coefficients(n: int, K: int) -> list[Fraction]:
    """Exact coefficients ``c_0..c_K`` of ``beta_n``."""
    if K < 0:
        raise XhermError("K must be non-negative")
    return list(_beta_cached(n, K))


def closed_form_even(n: int, k: int) -> Fraction:
    """``c_{2k} = (-1)^k n (n-((2k-1)^2+1)) prod_{j=1}^{k-2}(n-2(1+j)) 2^k/(2k)!``.

    Valid for ``k >= 2``.
    """
    if k < 2:
        raise XhermError("closed_form_even needs k >= 2")
    prod = 1
    for j in range(1, k - 1):
        prod *= n - 2 * (1 + j)
    num = (-1) ** k * n * (n - ((2 * k - 1) ** 2 + 1)) * prod * 2**k
    return Fraction(num, math.factorial(2 * k))


def closed_form_odd(n: int, k: int) -> Fraction:
    """``c_{2k-1} = (-1)^{k+1} (n-((2(k-1))^2+1)) prod_{j=1}^{k-2}(n-2(1+j)+1) 2^{k-1}/(2k-1)!``.

    Valid for ``k >= 2``.
    """
    if k < 2:
        raise XhermError("closed_form_odd needs k >= 2")
    prod = 1
    for j in range(1, k - 1):
        prod *= n - 2 * (1 + j) + 1
    num = (-1) ** (k + 1) * (n - ((2 * (k - 1)) ** 2 + 1)) * prod * 2 ** (k - 1)
    return Fraction(num, math.factorial(2 * k - 1))


def closed_form_coefficient(n: int, index: int) -> Fraction:
    """Coefficient of ``z^index`` in ``beta_n`` from the closed forms (index >= 3)."""
    if index < 3:
        raise XhermError("closed forms cover indices >= 3")
    if index % 2 == 0:
        return closed_form_even(n, index // 2)
    return closed_form_odd(n, (index + 1) // 2)


def truncation_degree(kind: str, n: int) -> int | None:
    """Degree at which ``mu_n``/``nu_n`` terminates, from the closed-form factors.

    The product in the even closed form contains ``n - 2(1+j)``, which
    vanishes for ``j = n/2 - 1 >= 1``; together with the leading factor ``n``
    this kills every even coefficient past ``z^n`` when n is even and n != 2.
    The odd case is analogous with ``n - 2(1+j) + 1``.
    """
    if kind == "mu":
        return n if n % 2 == 0 and n != 2 else None
    if kind == "nu":
        return n if n % 2 == 1 and n != 1 else None
    return None


@dataclass(frozen=True)
class SeriesSolution:
    """Truncated power series ``sum_{k<=K} coeffs[k] z^k`` with exact coefficients.

    Attributes
    ----------
    n : int
        Equation parameter.
    kind : str
        One of ``beta``, ``mu``, ``nu``, ``alpha``.
    coeffs : tuple of Fraction
        ``coeffs[k]`` multiplies ``z^k``.
    truncation_K : int
        Highest power kept.
    is_polynomial : bool
        True when the series terminates; then ``coeffs`` is the full polynomial.
    tail : tuple of Fraction
        A few coefficients beyond ``K``, used for tail bounds.
    """

    n: int
    kind: str
    coeffs: tuple
    truncation_K: int
    is_polynomial: bool
    tail: tuple = ()

    @property
    def degree(self) -> int | None:
        if not self.is_polynomial:
            return None
        return self.as_poly().degree

    def as_poly(self) -> RationalPoly:
        """The truncated series as an exact polynomial."""
        return RationalPoly(list(self.coeffs))

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _float_coeffs(self, order: int) -> np.ndarray:
        cache = self.__dict__.setdefault("_float_cache", {})
        if order not in cache:
            c = [float(x) for x in self.coeffs]
            for _ in range(order):
                c = [k * c[k] for k in range(1, len(c))] or [0.0]
            cache[order] = np.array(c)
        return cache[order]

    def __call__(self, z, order: int = 0):
        """Evaluate the ``order``-th derivative of the truncated series."""
        c = self._float_coeffs(order)
        z = np.asarray(z)
        acc = np.zeros_like(z, dtype=np.result_type(z.dtype, float))
        for ck in c[::-1]:
            acc = acc * z + ck
        return acc[()] if acc.ndim == 0 else acc

    def derivative(self, z, order: int = 1):
        return self(z, order)

    def tail_bound(self, z, order: int = 0) -> float:
        """Estimated size of the dropped terms at ``|z|``.

        Zero for polynomial series. Otherwise the magnitude of the first
        few omitted terms, doubled to cover the superexponentially small
        remainder beyond them.
        """
        if self.is_polynomial:
            return 0.0
        r = float(np.max(np.abs(z)))
        est = 0.0
        for j, ck in enumerate(self.tail, start=self.truncation_K + 1):
            if ck == 0:
                continue
            # d^order/dz^order z^j contributes j!/(j-order)! r^(j-order)
            fall = math.perm(j, order) if j >= order else 0
            est += abs(float(ck)) * fall * r ** (j - order)
        return 2.0 * est

    def to_json_dict(self) -> dict[str, str]:
        return self.as_poly().to_json_dict()


def _build(n: int, kind: str, K: int, c0: int, c1: int) -> SeriesSolution:
    if K < 0:
        raise XhermError("K must be non-negative")
    deg = truncation_degree(kind, n)
    # extra room so that a run of ZERO_RUN same-parity zeros can be observed
    probe = max(K, (deg or 0) + 2 * ZERO_RUN + 2) + 6
    c = _recurrence(n, probe, Fraction(c0), Fraction(c1))
    polynomial = False
    if deg is not None:
        run = [c[deg + 2 * i] for i in range(1, ZERO_RUN + 1)]
        polynomial = all(x == 0 for x in run) and c[deg] != 0
        if not polynomial:
            raise AssertionError(f"closed-form truncation of {kind}_{n} not confirmed by recurrence")
    if polynomial:
        keep = max(K, deg)
        coeffs = tuple(c[: deg + 1]) + (Fraction(0),) * (keep - deg)
        return SeriesSolution(n, kind, coeffs, keep, True, ())
    return SeriesSolution(n, kind, tuple(c[: K + 1]), K, False, tuple(c[K + 1: K + 7]))


def mu(n: int, K: int | None = None) -> SeriesSolution:
    """Even solution with ``mu_n(0) = 1``."""
    return _build(n, "mu", default_truncation(n) if K is None else K, 1, 0)


def nu(n: int, K: int | None = None) -> SeriesSolution:
    """Odd solution with ``nu_n'(0) = 1``."""
    return _build(n, "nu", default_truncation(n) if K is None else K, 0, 1)


def beta(n: int, K: int | None = None) -> SeriesSolution:
    """``beta_n = mu_n + nu_n``; never a polynomial."""
    K = default_truncation(n) if K is None else K
    m, v = mu(n, K), nu(n, K)
    size = max(len(m.coeffs), len(v.coeffs))
    coeffs = tuple(m.coefficient(k) + v.coefficient(k) for k in range(size))
    # one of the two parts is infinite, so its tail drives the bound
    tail_src = v if m.is_polynomial else m
    other_tail = () if (m.is_polynomial or v.is_polynomial) else v.tail
    tail = tuple(
        (tail_src.tail[i] if i < len(tail_src.tail) else 0)
        + (other_tail[i] if i < len(other_tail) else 0)
        for i in range(len(tail_src.tail))
    )
    return SeriesSolution(n, "beta", coeffs, size - 1, False, tail)


def m1(n: int) -> Fraction:
    """``M1(n)`` with ``Hhat_n = M1(n) nu_n`` for odd ``n >= 3``.

    ``M1 = (-1)^{(n+1)/2} n! 2^{(n+1)/2} / (p(n) prod_{j=1}^{(n-3)/2} (n-2(1+j)+1))``.
    """
    if n % 2 == 0 or n < 3:
        raise XhermError("M1 is defined for odd n >= 3")
    prod = 1
    for j in range(1, (n - 3) // 2 + 1):
        prod *= n - 2 * (1 + j) + 1
    p = (n - 1) * (n - 2)
    return Fraction((-1) ** ((n + 1) // 2) * math.factorial(n) * 2 ** ((n + 1) // 2), p * prod)


def m2(n: int) -> Fraction:
    """``M2(n)`` with ``Hhat_n = M2(n) mu_n`` for even ``n != 2``; ``M2(0) = 1``.

    ``M2 = (-1)^{(n+2)/2} n! 2^{n/2} / (n p(n) prod_{j=1}^{(n-4)/2} (n-2(1+j)))``.
    """
    if n % 2 == 1 or n == 2 or n < 0:
        raise XhermError("M2 is defined for even n >= 0, n != 2")
    if n == 0:
        return Fraction(1)
    prod = 1
    for j in range(1, (n - 4) // 2 + 1):
        prod *= n - 2 * (1 + j)
    p = (n - 1) * (n - 2)
    return Fraction((-1) ** ((n + 2) // 2) * math.factorial(n) * 2 ** (n // 2), n * p * prod)


def m2_gamma(n: int) -> float:
    """``(-1)^{(n+2)/2} 2^{n-1} pi^{-1/2} Gamma((n-1)/2)`` for even n."""
    if n % 2 == 1:
        raise XhermError("gamma form of M2 is for even n")
    q, has_pi = gamma_half_integer_exact(n - 1)
    # Gamma at a half-integer always carries sqrt(pi), which cancels pi^{-1/2}
    assert has_pi
    return float((-1) ** ((n + 2) // 2) * Fraction(2) ** (n - 1) * q)


def m3(n: int) -> Fraction:
    """``1`` for n in {1, 2}, ``1/M1`` for odd n, ``1/M2`` for even n."""
    if n < 0:
        raise XhermError("n must be non-negative")
    if n in (1, 2):
        return Fraction(1)
    return 1 / m1(n) if n % 2 else 1 / m2(n)


def alpha(n: int, K: int | None = None) -> Union[SeriesSolution, AnalyticFn]:
    """``alpha_n = M3(n) Hhat_n``.

    A terminating series (equal to ``nu_n`` or ``mu_n``) for n not in {1, 2};
    the analytic gap solutions otherwise.
    """
    if n in (1, 2):
        return hhat_gap_fn(n)
    poly = hhat(n) * m3(n)
    keep = max(default_truncation(n) if K is None else K, poly.degree)
    return SeriesSolution(n, "alpha", tuple(poly.dense(keep + 1)), keep, True, ())


def norm_squared_series(kind: str, n: int) -> float:
    """Weighted squared norm of ``nu_n``/``mu_n`` under ``exp(-x^2)/(1+2x^2)^2``."""
    from .exceptional import norm_squared

    if kind == "nu":
        return norm_squared(n) / float(m1(n)) ** 2
    if kind == "mu":
        return norm_squared(n) / float(m2(n)) ** 2
    raise XhermError(f"unknown kind {kind!r}")


def series_for(kind: str, n: int, K: int | None = None):
    """Dispatch on ``kind`` in :data:`KINDS`."""
    table = {"beta": beta, "mu": mu, "nu": nu, "alpha": alpha}
    if kind not in table:
        raise XhermError(f"unknown series kind {kind!r}")
    return table[kind](n, K)


def evaluate_checked(sol: SeriesSolution, z, order: int = 0, rtol: float = 1e-12):
    """Evaluate and warn when the tail bound exceeds ``rtol`` of the value."""
    val = sol(z, order)
    bound = sol.tail_bound(z, order)
    if bound > rtol * max(float(np.max(np.abs(val))), 1.0):
        warnings.warn(
            f"{sol.kind}_{sol.n}: tail bound {bound:.2e} at |z|={np.max(np.abs(z)):.3g}; raise K",
            PrecisionWarning,
            stacklevel=2,
        )
    return val

"""Classical Hermite polynomials and the erf-based index -1 extension."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import XhermError
from .polynomial import RationalPoly
from .special import SQRT_PI, erfcx


@lru_cache(maxsize=None)
def hermite(n: int) -> RationalPoly:
    """Physicists' Hermite polynomial ``H_n`` with exact coefficients.

    Built from ``H_{n+1} = 2x H_n - 2n H_{n-1}``.
    """
    if n < 0:
        raise XhermError("hermite() takes n >= 0; use hermite_negative for H_{-1}")
    if n == 0:
        return RationalPoly.constant(1)
    if n == 1:
        return RationalPoly({1: 2})
    x2 = RationalPoly({1: 2})
    return x2 * hermite(n - 1) - hermite(n - 2) * (2 * (n - 1))


def hermite_rodrigues(n: int) -> RationalPoly:
    """``H_n`` from the Rodrigues formula, kept as a cross-check for small n.

    Writes ``d^n/dx^n exp(-x^2) = P_n(x) exp(-x^2)`` with
    ``P_{k+1} = P_k' - 2x P_k``, so that ``H_n = (-1)^n P_n``.
    """
    if n < 0:
        raise XhermError("n must be non-negative")
    p = RationalPoly.constant(1)
    x2 = RationalPoly({1: 2})
    for _ in range(n):
        p = p.derivative() - x2 * p
    return p if n % 2 == 0 else -p


def hermite_derivative(n: int) -> RationalPoly:
    """``H_n' = 2n H_{n-1}``."""
    if n <= 0:
        raise XhermError("hermite_derivative requires n >= 1")
    return hermite(n - 1) * (2 * n)


@dataclass(frozen=True)
class AnalyticFn:
    """Evaluable holomorphic function with optional analytic derivatives.

    ``derivs[k]`` evaluates the (k+1)-th derivative.
    """

    tag: str
    fn: Callable = field(compare=False)
    derivs: tuple = field(default=(), compare=False)

    def __call__(self, z):
        return self.fn(z)

    def derivative(self, z, order: int = 1):
        if order == 0:
            return self.fn(z)
        if order > len(self.derivs):
            raise XhermError(f"{self.tag}: derivative of order {order} not available")
        return self.derivs[order - 1](z)


def hermite_negative(z):
    """``H_{-1}(z) = (sqrt(pi)/2) e^{z^2} (1 - erf z)``.

    Evaluated through the scaled complement ``erfcx`` so that the product of
    a huge exponential and a tiny complement is never formed.
    """
    out = 0.5 * SQRT_PI * erfcx(np.asarray(z))
    if not np.all(np.isfinite(out)):
        raise OverflowError("H_{-1}(z) overflows double precision")
    return out[()] if np.ndim(out) == 0 else out


# Hhat_1 and Hhat_2 written through H_{-1}; derivatives use H_{-1}' = 2z H_{-1} - 1.
def _hhat1(z):
    z = np.asarray(z)
    return 4 * z + (2 - 4 * z**2) * hermite_negative(z)


def _hhat1_d1(z):
    z = np.asarray(z)
    return 2 + 4 * z**2 - (4 * z + 8 * z**3) * hermite_negative(z)


def _hhat1_d2(z):
    z = np.asarray(z)
    return 12 * z + 8 * z**3 - (4 + 32 * z**2 + 16 * z**4) * hermite_negative(z)


def _hhat2(z):
    z = np.asarray(z)
    return 2 + 4 * z**2 + 8 * z * hermite_negative(z)


def _hhat2_d1(z):
    z = np.asarray(z)
    return 8 * (1 + 2 * z**2) * hermite_negative(z)


def _hhat2_d2(z):
    z = np.asarray(z)
    return (48 * z + 32 * z**3) * hermite_negative(z) - 8 - 16 * z**2


HHAT_GAP = {
    1: AnalyticFn("Hhat_1", _hhat1, (_hhat1_d1, _hhat1_d2)),
    2: AnalyticFn("Hhat_2", _hhat2, (_hhat2_d1, _hhat2_d2)),
}


def hhat_gap_fn(n: int) -> AnalyticFn:
    if n not in HHAT_GAP:
        raise XhermError(f"hhat_gap is defined only for n in {{1, 2}}, got {n}")
    return HHAT_GAP[n]


def hhat_gap(n: int, z):
    """Non-polynomial solutions at the gap indices.

    ``Hhat_1 = 4z + sqrt(pi) e^{z^2} (1 - 2z^2)(1 - erf z)`` and
    ``Hhat_2 = 2 + 4z^2 + 4 sqrt(pi) z e^{z^2} (1 - erf z)``.
    """
    return hhat_gap_fn(n)(z)

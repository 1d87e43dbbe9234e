"""Complex error functions, half-integer gamma values and the 2F2 series."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special as sc

from .errors import ConvergenceError, PrecisionWarning, XhermError

SQRT_PI = math.sqrt(math.pi)

# beyond this |Im z| the e^{y^2} growth of erf swamps double precision
ERF_IMAG_LIMIT = 8.0
HYP_TERM_CAP = 300
HYP_RTOL = 1e-16


def _check_imag(z, limit=ERF_IMAG_LIMIT):
    if np.any(np.abs(np.imag(z)) > limit):
        warnings.warn(
            f"|Im z| > {limit}: erf values carry reduced relative accuracy",
            PrecisionWarning,
            stacklevel=3,
        )


def erf(z):
    """Error function for real or complex arguments (scipy backend)."""
    z = np.asarray(z)
    _check_imag(z)
    out = sc.erf(z)
    return out[()] if out.ndim == 0 else out


def erfi(z):
    """Imaginary error function ``-i erf(iz)``."""
    z = np.asarray(z)
    _check_imag(1j * z)
    out = sc.erfi(z)
    return out[()] if out.ndim == 0 else out


def erfcx(z):
    """Scaled complementary error function ``exp(z^2) erfc(z)``."""
    z = np.asarray(z)
    out = sc.erfcx(z)
    return out[()] if out.ndim == 0 else out


def erf_maclaurin(z, terms: int = 120):
    """Reference Maclaurin sum ``2/sqrt(pi) sum (-1)^k z^(2k+1)/(k!(2k+1))``.

    Only accurate for moderate ``|z|``; used as an independent oracle.
    """
    z = np.asarray(z, dtype=complex)
    z2 = z * z
    term = z.copy()
    acc = np.zeros_like(z)
    for k in range(terms):
        acc = acc + term / (2 * k + 1)
        term = -term * z2 / (k + 1)
    return 2.0 / SQRT_PI * acc


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameters of ``2F2(a1, a2; b1, b2; z)``."""

    a1: float
    a2: float
    b1: float
    b2: float

    def __post_init__(self):
        for b in (self.b1, self.b2):
            if b <= 0 and float(b).is_integer():
                raise XhermError(f"lower parameter {b} is a non-positive integer")


def pochhammer(a, k: int):
    """Rising factorial ``(a)_k``; exact for ``int``/``Fraction`` input."""
    if k < 0:
        raise XhermError("Pochhammer index must be non-negative")
    out = Fraction(1) if isinstance(a, (int, Fraction)) else 1.0
    for i in range(k):
        out *= a + i
    return out


def hyp2f2(spec: HypergeometricSpec, z, *, max_terms: int = HYP_TERM_CAP, rtol: float = HYP_RTOL):
    """Generalized hypergeometric ``2F2`` by direct summation.

    Terms are generated by the running Pochhammer ratio and accumulated with
    Neumaier compensation, which matters when the terms alternate in sign
    and exceed the result in magnitude.

    Parameters
    ----------
    spec : HypergeometricSpec
    z : complex or array_like
    max_terms : int
        Term cap. Exceeding it raises :class:`ConvergenceError`.
    rtol : float
        Stop once two consecutive terms fall below ``rtol * |partial sum|``.

    Returns
    -------
    complex or ndarray
    """
    z = np.asarray(z, dtype=complex)
    total = np.ones_like(z)
    comp = np.zeros_like(z)
    term = np.ones_like(z)
    a1, a2, b1, b2 = spec.a1, spec.a2, spec.b1, spec.b2
    quiet = 0
    for k in range(max_terms):
        term = term * ((a1 + k) * (a2 + k) / ((b1 + k) * (b2 + k) * (k + 1))) * z
        t = total + term
        # Neumaier: pick the branch according to which addend is larger
        big = np.abs(total) >= np.abs(term)
        comp = comp + np.where(big, (total - t) + term, (term - t) + total)
        total = t
        scale = np.abs(total + comp)
        # terms eventually decrease once k exceeds |z|
        if k > np.max(np.abs(z)) and np.all(np.abs(term) <= rtol * np.maximum(scale, 1e-300)):
            quiet += 1
            if quiet >= 2:
                out = total + comp
                return out[()] if out.ndim == 0 else out
        else:
            quiet = 0
    raise ConvergenceError(
        f"2F2 did not converge in {max_terms} terms", tail_estimate=float(np.max(np.abs(term)))
    )


def gamma_half_integer_exact(m: int) -> tuple[Fraction, bool]:
    """``Gamma(m/2)`` as ``(q, has_sqrt_pi)`` meaning ``q`` or ``q*sqrt(pi)``.

    Raises on the poles ``m = 0, -2, -4, ...``.
    """
    if m <= 0 and m % 2 == 0:
        raise XhermError(f"Gamma({m}/2) is a pole")
    if m % 2 == 0:
        return Fraction(math.factorial(m // 2 - 1)), False
    # start from Gamma(1/2) = sqrt(pi) and step with Gamma(x+1) = x Gamma(x)
    val = Fraction(1)
    x = Fraction(1, 2)
    target = Fraction(m, 2)
    while x < target:
        val *= x
        x += 1
    while x > target:
        x -= 1
        val /= x
    return val, True


def gamma_half_integer(m: int) -> float:
    """``Gamma(m/2)`` as a float, exact up to the final rounding."""
    q, has_pi = gamma_half_integer_exact(m)
    return float(q) * SQRT_PI if has_pi else float(q)

"""The codimension-2 exceptional Hermite family built on the partition (1)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import GapSequenceError, SingularPointError, XhermError
from .hermite import hermite
from .partitions import (
    GapSequence,
    Partition,
    double_partition,
    excluded_indices,
    gap_sequence,
    is_adler,
)
from .polynomial import RationalPoly, wronskian
from .special import SQRT_PI

SINGULAR_POINTS = (1j / math.sqrt(2), -1j / math.sqrt(2))


@dataclass(frozen=True)
class XopFamily:
    """Exceptional Hermite family of a base partition (only ``(1)`` is wired)."""

    base: Partition = field(default_factory=lambda: Partition((1,)))

    def __post_init__(self):
        if not is_adler(self.gaps):
            raise XhermError("doubled partition does not give an admissible gap sequence")

    @property
    def doubled(self) -> Partition:
        return double_partition(self.base)

    @property
    def gaps(self) -> GapSequence:
        return gap_sequence(self.doubled)

    @property
    def excluded(self) -> frozenset[int]:
        return excluded_indices(self.base)

    def wronskian_base(self) -> RationalPoly:
        """``H_lambda = Wr(H_{k_1}, ..., H_{k_l})`` over the gap sequence."""
        return wronskian([hermite(k) for k in self.gaps.ks])


X21 = XopFamily()


def wronskian_poly(polys: list[RationalPoly]) -> RationalPoly:
    """Exact Wronskian of a list of polynomials."""
    return wronskian(list(polys))


def _check_index(n: int):
    if n < 0:
        raise XhermError("index must be non-negative")
    if n in X21.excluded:
        raise GapSequenceError(
            f"n={n} is in the excluded index set {{1, 2}}: the Wronskian degenerates; "
            "the gap solutions are available from hermite.hhat_gap"
        )


@lru_cache(maxsize=None)
def xop_polynomial(n: int) -> RationalPoly:
    """``H_n^(1) = Wr(H_1, H_2, H_n)`` built directly from the determinant."""
    _check_index(n)
    return wronskian([hermite(k) for k in X21.gaps.ks] + [hermite(n)])


@lru_cache(maxsize=None)
def hhat(n: int) -> RationalPoly:
    """``Hhat_n = H_n + 4n H_{n-2} + 4n(n-3) H_{n-4}``.

    Terms with a negative Hermite index are dropped, which is only allowed
    when their prefactor vanishes (n = 0 and n = 3).
    """
    _check_index(n)
    out = hermite(n)
    for shift, pref in ((2, 4 * n), (4, 4 * n * (n - 3))):
        m = n - shift
        if m >= 0:
            out = out + hermite(m) * pref
        elif pref != 0:
            raise XhermError(f"negative Hermite index {m} with nonzero prefactor")
    return out


def p11(n: int) -> int:
    """``p_(1,1)(n) = (n-1)(n-2)``."""
    return (n - 1) * (n - 2)


def weight(x):
    """``W_(1,1)(x) = exp(-x^2) / (4(1+2x^2))^2``."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-x * x) / (4.0 * (1.0 + 2.0 * x * x)) ** 2
    return out[()] if out.ndim == 0 else out


def weight_hhat(x):
    """``exp(-x^2) / (1+2x^2)^2``, i.e. ``16 * weight``."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-x * x) / (1.0 + 2.0 * x * x) ** 2
    return out[()] if out.ndim == 0 else out


def norm_squared_exact(n: int, kind: str = "hhat") -> Fraction:
    """Rational prefactor ``q`` of the squared norm ``q * sqrt(pi)``."""
    _check_index(n)
    if kind == "hhat":
        return Fraction(2**n * math.factorial(n), p11(n))
    if kind == "xop":
        return Fraction(2 ** (n + 2) * math.factorial(n) * p11(n))
    raise XhermError(f"unknown norm kind {kind!r}")


def norm_squared(n: int, kind: str = "hhat") -> float:
    """Squared weighted L2 norm of ``Hhat_n`` (kind ``hhat``) or ``H_n^(1)`` (kind ``xop``)."""
    return float(norm_squared_exact(n, kind)) * SQRT_PI


def potential(z):
    """Schrodinger potential ``z^2 - (8 - 16 z^2)/(1 + 2z^2)^2``."""
    z = np.asarray(z)
    d = 1 + 2 * z * z
    if np.any(np.abs(d) < 1e-14):
        raise SingularPointError("potential is singular at z = +-i/sqrt(2)")
    out = z * z - (8 - 16 * z * z) / d**2
    return out[()] if out.ndim == 0 else out


def potential_fd(z, h: float = 1e-4):
    """Finite-difference oracle ``z^2 - 2 (log Wr)''`` with ``Wr = 4(1+2z^2)``."""
    wr = X21.wronskian_base()

    def logw(t):
        return np.log(wr(t))

    d2 = (logw(z + h) - 2 * logw(z) + logw(z - h)) / h**2
    return z * z - 2 * d2

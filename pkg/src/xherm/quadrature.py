"""Real-line weighted integrals and straight-segment complex path integrals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import QuadratureError, XhermError
from .exceptional import weight, weight_hhat

REAL_LINE_R = 10.0
GL_ORDER = 32
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_ORDER)
_GL16_X, _GL16_W = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class QuadResult:
    value: complex | float
    error: float

    def __iter__(self):
        yield self.value
        yield self.error


@dataclass(frozen=True)
class PathSegment:
    start: complex
    end: complex

    @property
    def length(self) -> float:
        return abs(self.end - self.start)


WEIGHTS = {"hhat": weight_hhat, "xop": weight, None: lambda x: np.ones_like(x)}


def _tanh_sinh_nodes(level: int, tmax: float = 3.2):
    h = 2.0 ** (-level)
    t = np.arange(-tmax, tmax + h / 2, h)
    s = 0.5 * math.pi * np.sinh(t)
    x = np.tanh(s)
    w = h * 0.5 * math.pi * np.cosh(t) / np.cosh(s) ** 2
    # nodes that round onto the endpoints carry negligible weight
    keep = np.abs(x) < 1.0
    return x[keep], w[keep]


def integrate_real(f: Callable, a: float, b: float, *, tol: float = 1e-13, max_level: int = 10) -> QuadResult:
    """Tanh-sinh quadrature on ``[a, b]`` with step halving.

    ``f`` must accept numpy arrays.
    """
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    prev = None
    for level in range(2, max_level + 1):
        x, w = _tanh_sinh_nodes(level)
        val = half * float(np.sum(w * f(mid + half * x)))
        if prev is not None:
            err = abs(val - prev)
            if err <= tol * max(abs(val), 1e-300):
                return QuadResult(float(val), float(err))
        prev = val
    raise QuadratureError("tanh-sinh refinement did not converge", estimates=(prev, val))


def integrate_real_weighted(
    f: Callable,
    weight_kind: str | None = "hhat",
    *,
    R: float = REAL_LINE_R,
    panels: int = 8,
    tol: float = 1e-13,
) -> QuadResult:
    """``int_{-R}^{R} f(x) w(x) dx`` for the exceptional weights.

    The interval is cut into ``panels`` equal pieces, each handled by
    :func:`integrate_real`; panel results are summed in a fixed order. The
    neglected tails are below ``exp(-R^2)`` times polynomial factors.

    Parameters
    ----------
    f : callable
        Vectorized integrand without the weight.
    weight_kind : {"hhat", "xop", None}
    """
    if weight_kind not in WEIGHTS:
        raise XhermError(f"unknown weight kind {weight_kind!r}")
    w = WEIGHTS[weight_kind]

    def g(x):
        return np.asarray(f(x), dtype=float) * w(x)

    edges = np.linspace(-R, R, panels + 1)
    total, err = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        r = integrate_real(g, a, b, tol=tol)
        total += r.value
        err += r.error
    return QuadResult(float(total), float(err))


def _gl_panels(f, a: complex, b: complex, m: int) -> complex:
    """Composite Gauss-Legendre rule with ``m`` equal panels on ``[a, b]``."""
    edges = a + (b - a) * np.arange(m + 1) / m
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)[:, None]
    half = 0.5 * (hi - lo)[:, None]
    z = mid + half * _GL_X[None, :]
    vals = f(z) * _GL_W[None, :] * half
    return complex(np.sum(vals.sum(axis=1)))


def integrate_path(
    f: Callable,
    seg: PathSegment,
    *,
    rtol: float = 1e-12,
    atol: float = 1e-14,
    max_panels: int = 4096,
) -> QuadResult:
    """``int_seg f(z) dz`` along a straight segment.

    Panels are doubled until two consecutive composite estimates agree.
    """
    a, b = complex(seg.start), complex(seg.end)
    if a == b:
        return QuadResult(0j, 0.0)
    m = 1
    prev = _gl_panels(f, a, b, m)
    while m < max_panels:
        m *= 2
        cur = _gl_panels(f, a, b, m)
        err = abs(cur - prev)
        if err <= max(rtol * abs(cur), atol):
            return QuadResult(cur, float(err))
        prev = cur
    raise QuadratureError(f"path integral did not converge with {max_panels} panels", estimates=(prev, cur))


def integrate_lpath(f: Callable, start: complex, end: complex, **kw) -> QuadResult:
    """Two-leg path: horizontal then vertical. Used to probe path independence."""
    corner = complex(end.real, start.imag)
    r1 = integrate_path(f, PathSegment(start, corner), **kw)
    r2 = integrate_path(f, PathSegment(corner, end), **kw)
    return QuadResult(r1.value + r2.value, r1.error + r2.error)


def integrate_segments(f: Callable, starts, ends) -> tuple[np.ndarray, np.ndarray]:
    """Integrate ``f`` over many short segments at once.

    Each segment gets one 32-point Gauss panel. The error estimate is the
    gap to a 16-point panel, a generous bound on the 32-point error for
    the short, smooth segments of a mesh walk.

    Returns
    -------
    values, errors : ndarray
    """
    starts = np.asarray(starts, dtype=complex)
    ends = np.asarray(ends, dtype=complex)
    mid = 0.5 * (starts + ends)[..., None]
    half = 0.5 * (ends - starts)[..., None]
    z = mid + half * _GL_X
    v32 = np.sum(f(z) * _GL_W * half, axis=-1)
    z16 = mid + half * _GL16_X
    v16 = np.sum(f(z16) * _GL16_W * half, axis=-1)
    return v32, np.abs(v32 - v16)


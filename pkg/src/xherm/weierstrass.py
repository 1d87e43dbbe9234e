"""Enneper-Weierstrass minimal surfaces attached to the exceptional Hermite equation.

The holomorphic data are

    eta^2 = c1^2 exp(z^2) (1 + 2z^2)^2
    chi   = -(2n / (lambda c1^2)) (c2 + (sqrt(pi)/4) erf z + s(z) exp(-z^2) / (2(1 + 2z^2)))

with ``s(z) = 1`` (``chi_form="unit"``, the default) or ``s(z) = z`` (``chi_form="associated"``, the form
for which ``-lambda eta^2 chi' = 2n``). Both give minimal surfaces. Only the
associated form ties the surface to the linear problem whose first
component solves the Hermite-type equation.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from .errors import QuadratureError, SingularPointError, XhermError
from .quadrature import PathSegment, QuadResult, integrate_path, integrate_segments
from .series import alpha, beta, default_truncation
from .special import SQRT_PI, HypergeometricSpec, erf, erfi, hyp2f2

CHI_FORMS = ("associated", "unit")
F_NEG_HALF = HypergeometricSpec(1, 1, -0.5, 2)
F_HALF = HypergeometricSpec(1, 1, 0.5, 2)
F_THREE_HALF = HypergeometricSpec(1, 1, 1.5, 2)
WORKERS_ENV = "XHERM_WORKERS"


@dataclass(frozen=True)
class WeierstrassParams:
    """Free data of the immersion. Defaults give the standard parameter set."""

    n: int = 0
    spectral_lambda: complex = SQRT_PI
    c1: complex = 1.0
    c2: complex = 1.0
    xi0: complex = 1 + 3j
    chi_form: str = "unit"

    def __post_init__(self):
        if self.n < 0:
            raise XhermError("n must be non-negative")
        if self.c1 == 0 or self.spectral_lambda == 0:
            raise XhermError("c1 and lambda must be nonzero")
        if self.chi_form not in CHI_FORMS:
            raise XhermError(f"chi_form must be one of {CHI_FORMS}")

    def to_json_dict(self) -> dict:
        d = asdict(self)
        for key in ("spectral_lambda", "c1", "c2", "xi0"):
            v = complex(d[key])
            d[key] = [v.real, v.imag]
        return d


@dataclass(frozen=True)
class FrameMatrix:
    """2x2 complex matrix tagged with its Lie algebra."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex
    algebra: str = "sl2"

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    @property
    def trace(self) -> complex:
        return self.m11 + self.m22

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def anti_hermitian_defect(self) -> float:
        a = self.as_array()
        return float(np.max(np.abs(a + a.conj().T)))


@dataclass
class SurfaceMesh:
    """Immersion sampled on a tensor grid.

    ``points[i, j]`` is F at ``xi = x[i] + 1j * y[j]``; ``err[i, j]`` its
    propagated quadrature error estimate. Row-major order means ``i`` outer.
    """

    params: WeierstrassParams
    x: np.ndarray
    y: np.ndarray
    points: np.ndarray
    err: np.ndarray
    integrals: np.ndarray = field(repr=False, default=None)

    @property
    def shape(self) -> tuple[int, int]:
        return self.points.shape[:2]


# holomorphic data -----------------------------------------------------------
def _check_regular(z):
    if np.any(np.abs(1 + 2 * np.asarray(z) ** 2) < 1e-12):
        raise SingularPointError("z = +-i/sqrt(2) is a singular point")


def eta_squared(p: WeierstrassParams, z):
    """``c1^2 exp(z^2) (1+2z^2)^2``."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.real**2 - z.imag**2 > 700):
        raise OverflowError("exp(z^2) overflows")
    return p.c1**2 * np.exp(z * z) * (1 + 2 * z * z) ** 2


def eta_log_derivative(z):
    """``eta'/eta = z + 4z/(1+2z^2)``."""
    _check_regular(z)
    return z + 4 * z / (1 + 2 * z * z)


def weight_complex(z):
    """``exp(-z^2) / (16 (1+2z^2)^2)`` continued off the real line."""
    return np.exp(-z * z) / (16 * (1 + 2 * z * z) ** 2)


def _s(p: WeierstrassParams, z):
    return z if p.chi_form == "associated" else np.ones_like(z)


def _g(p: WeierstrassParams, z):
    return p.c2 + 0.25 * SQRT_PI * erf(z) + _s(p, z) * np.exp(-z * z) / (2 * (1 + 2 * z * z))


def _chi_prefactor(p: WeierstrassParams) -> complex:
    return -2 * p.n / (p.spectral_lambda * p.c1**2)


def chi(p: WeierstrassParams, z):
    """Second holomorphic function of the representation."""
    z = np.asarray(z, dtype=complex)
    _check_regular(z)
    return _chi_prefactor(p) * _g(p, z)


def chi_derivative(p: WeierstrassParams, z):
    """Analytic ``chi'``."""
    z = np.asarray(z, dtype=complex)
    _check_regular(z)
    d = 1 + 2 * z * z
    e = np.exp(-z * z)
    if p.chi_form == "associated":
        gp = e / d**2
    else:
        gp = e * (0.5 - z / d - 2 * z / d**2)
    return _chi_prefactor(p) * gp


# closed-form antiderivatives --------------------------------------------------
def prim_eta(z):
    """``A = sqrt(pi) erfi z + exp(z^2) z (2z^2 - 1)``, with ``A' = exp(z^2)(1+2z^2)^2``."""
    return SQRT_PI * erfi(z) + np.exp(z * z) * z * (2 * z * z - 1)


def prim_erf_eta(z):
    """``K with K' = (sqrt(pi)/4) erf(z) exp(z^2) (1+2z^2)^2``, via 2F2 terms."""
    w = z * z
    return (
        -0.25 * w * hyp2f2(F_NEG_HALF, w)
        + 0.5 * w * hyp2f2(F_HALF, w)
        + 0.25 * w * hyp2f2(F_THREE_HALF, w)
        - 0.25 * w * w
        - 0.25 * w
    )


def prim_erf_eta_alt(z):
    """Independent antiderivative of the same integrand (differs by a constant).

    Integration by parts against ``A`` gives
    ``(sqrt(pi)/4) [erf A - (2z^2/sqrt(pi)) 2F2(1,1;3/2,2;-z^2) - (z^4-z^2)/sqrt(pi)]``.
    """
    w = z * z
    inner = erf(z) * prim_eta(z) - 2 * w / SQRT_PI * hyp2f2(F_THREE_HALF, -w) - (w * w - w) / SQRT_PI
    return 0.25 * SQRT_PI * inner


def _prim_s(chi_form, z):
    """Antiderivative of ``s(z)(1+2z^2)/2``."""
    if chi_form == "associated":
        return 0.25 * z**2 + 0.25 * z**4
    return 0.5 * z + z**3 / 3


def _prim_t(chi_form, z):
    """Antiderivative of ``(sqrt(pi)/4) erf(z) s(z)(1+2z^2)``."""
    e = np.exp(-z * z)
    if chi_form == "associated":
        return SQRT_PI / 8 * (z**4 + z**2 - 1.25) * erf(z) + e * (2 * z**3 + 5 * z) / 16
    return 0.25 * SQRT_PI * erf(z) * (z + 2 * z**3 / 3) + e * (2 * z**2 + 5) / 12


def _prim_q(chi_form, z):
    """Antiderivative of ``s(z)^2 exp(-z^2) / 4``."""
    if chi_form == "associated":
        return -z * np.exp(-z * z) / 8 + SQRT_PI / 16 * erf(z)
    return SQRT_PI / 8 * erf(z)


def _integrand_i4(z):
    return np.exp(z * z) * (1 + 2 * z * z) ** 2 * erf(z) ** 2


def _bracket_pieces(chi_form: str):
    """(antiderivative, integrand) pairs that make up the closed forms."""
    e = lambda z: np.exp(z * z) * (1 + 2 * z * z) ** 2  # noqa: E731
    s = (lambda z: z) if chi_form == "associated" else (lambda z: np.ones_like(z))
    return {
        "A": (prim_eta, e),
        "K": (prim_erf_eta, lambda z: 0.25 * SQRT_PI * erf(z) * e(z)),
        "S": (lambda z: _prim_s(chi_form, z), lambda z: s(z) * (1 + 2 * z * z) / 2),
        "T": (lambda z: _prim_t(chi_form, z), lambda z: 0.25 * SQRT_PI * erf(z) * s(z) * (1 + 2 * z * z)),
        "Q": (lambda z: _prim_q(chi_form, z), lambda z: s(z) ** 2 * np.exp(-z * z) / 4),
    }


BRACKET_SAMPLES = np.array(
    [0.4 + 0.1j, -0.7 + 0.5j, 0.9 - 0.8j, 0.1 + 0.9j, -0.3 - 0.2j,
     1.0 + 3.0j, 0.6 + 2.0j, -1.0 - 1.0j, 0.2 + 0.0j, 1.1 + 1.4j]
)


def bracket_derivative_defects(chi_form: str = "associated", h: float = 1e-3) -> dict[str, float]:
    """Relative gap between the derivative of each closed-form piece and its integrand.

    Uses a fourth-order central difference in the complex plane.
    """
    out = {}
    z = BRACKET_SAMPLES
    for name, (prim, integrand) in _bracket_pieces(chi_form).items():
        d = (-prim(z + 2 * h) + 8 * prim(z + h) - 8 * prim(z - h) + prim(z - 2 * h)) / (12 * h)
        ref = integrand(z)
        out[name] = float(np.max(np.abs(d - ref) / np.maximum(np.abs(ref), 1.0)))
    return out


@lru_cache(maxsize=None)
def brackets_valid(chi_form: str = "associated", rtol: float = 1e-7) -> bool:
    """Derivative-consistency gate applied before the closed forms are trusted."""
    return all(v < rtol for v in bracket_derivative_defects(chi_form).values())


# integrals -------------------------------------------------------------------
@dataclass(frozen=True)
class ImmersionIntegrals:
    I1: complex
    I2: complex
    I3: complex
    err: float
    method: str = "closed-form"


def _coefficients(p: WeierstrassParams):
    lam, c1, c2, n = p.spectral_lambda, p.c1, p.c2, p.n
    k2 = 4 * n**2 / (lam**2 * c1**2)
    k4 = n**2 * math.pi / (4 * lam**2 * c1**2)
    k3 = -2 * n / lam
    return c1, c2, k2, k3, k4


def _bracket_values(p: WeierstrassParams, z):
    """Closed-form brackets (B1, B2, B3) at z; B2 excludes the I4 part."""
    z = np.asarray(z, dtype=complex)
    c1, c2, k2, k3, _ = _coefficients(p)
    a = prim_eta(z)
    b1 = c1**2 * a
    if p.n == 0:
        zero = np.zeros_like(a)
        return b1, zero, zero
    ks = prim_erf_eta(z) + _prim_s(p.chi_form, z)
    b3 = k3 * (c2 * a + ks)
    b2 = k2 * (c2**2 * a + 2 * c2 * ks + _prim_t(p.chi_form, z) + _prim_q(p.chi_form, z))
    return b1, b2, b3


def integrands(p: WeierstrassParams, z):
    """``(eta^2, chi^2 eta^2, chi eta^2)`` at z."""
    e2 = eta_squared(p, z)
    c = chi(p, z)
    return e2, c * c * e2, c * e2


def direct_integrals(p: WeierstrassParams, xi: complex, **kw) -> ImmersionIntegrals:
    """All three integrals by straight-path quadrature (independent oracle)."""
    seg = PathSegment(p.xi0, xi)
    r = [integrate_path(lambda z, k=k: integrands(p, z)[k], seg, **kw) for k in range(3)]
    return ImmersionIntegrals(r[0].value, r[1].value, r[2].value, sum(x.error for x in r), "quadrature")


def i4_integral(xi0: complex, xi: complex, **kw) -> QuadResult:
    """``int exp(z^2)(1+2z^2)^2 erf(z)^2 dz`` from xi0 to xi."""
    return integrate_path(_integrand_i4, PathSegment(xi0, xi), **kw)


def i4_by_parts(xi0: complex, xi: complex, **kw) -> QuadResult:
    """Alternative evaluator for the erf^2 integral via integration by parts.

    Reduces it to ``2 int exp(z^2) erf(z)^2 dz`` plus boundary terms.
    """

    def boundary(z):
        ef = erf(z)
        return (
            ef**2 * prim_eta(z)
            - SQRT_PI * ef**2 * erfi(z)
            - (4 * z**4 - 4 * z**2 - 1) * ef / (2 * SQRT_PI)
            - np.exp(-z * z) * (2 * z**3 + z) / math.pi
        )

    rest = integrate_path(lambda z: np.exp(z * z) * erf(z) ** 2, PathSegment(xi0, xi), **kw)
    return QuadResult(complex(boundary(xi) - boundary(xi0) + 2 * rest.value), 2 * rest.error)


def immersion_integrals(p: WeierstrassParams, xi: complex) -> ImmersionIntegrals:
    """``I1, I2, I3`` from the closed forms plus the quadrature of the erf^2 term."""
    xi = complex(xi)
    if xi == p.xi0:
        return ImmersionIntegrals(0j, 0j, 0j, 0.0)
    if not brackets_valid(p.chi_form):
        return direct_integrals(p, xi)
    b1, b2, b3 = (complex(v) for v in np.subtract(_bracket_values(p, xi), _bracket_values(p, p.xi0)))
    _, _, _, _, k4 = _coefficients(p)
    err = 0.0
    if p.n:
        r = i4_integral(p.xi0, xi)
        b2 += k4 * r.value
        err = abs(k4) * r.error
    return ImmersionIntegrals(b1, b2, b3, err)


def surface_from_integrals(i1, i2, i3):
    """``F = (Re(I1 - I2)/2, -Im(I1 + I2)/2, Re I3)``."""
    return np.stack(
        [0.5 * np.real(i1 - i2), -0.5 * np.imag(i1 + i2), np.real(i3)], axis=-1
    )


def immersion_point(p: WeierstrassParams, xi: complex) -> np.ndarray:
    """Point of the minimal surface at ``xi``."""
    r = immersion_integrals(p, xi)
    return surface_from_integrals(r.I1, r.I2, r.I3)


def su2_from_integrals(i1, i2, i3) -> FrameMatrix:
    """``-(i/2) [[I3 + I3*, I1 - I2*], [-I2 + I1*, -(I3 + I3*)]]``.

    Entries are formed so that trace-freeness and anti-Hermiticity hold
    exactly in floating point: multiplying by ``-0.5j`` is exact.
    """
    a = 2.0 * float(np.real(i3))
    w = complex(i1) - complex(i2).conjugate()
    m11 = -0.5j * a
    return FrameMatrix(m11, -0.5j * w, -0.5j * w.conjugate(), -m11, "su2")


def su2_matrix(p: WeierstrassParams, xi: complex) -> FrameMatrix:
    r = immersion_integrals(p, xi)
    return su2_from_integrals(r.I1, r.I2, r.I3)


# linear problem -----------------------------------------------------------------
def potential_matrix(p: WeierstrassParams, z) -> FrameMatrix:
    """``U = lambda eta^2 [[chi, -1], [chi^2, -chi]]``."""
    z = complex(z)
    c = complex(chi(p, z))
    le = p.spectral_lambda * complex(eta_squared(p, z))
    m11 = le * c
    return FrameMatrix(m11, -le, le * c * c, -m11, "sl2")


def potential_matrix_expanded(p: WeierstrassParams, z) -> FrameMatrix:
    """Same matrix written through the weight ``W`` with ``eta^2 = c1^2 / (16 W)``."""
    z = complex(z)
    _check_regular(z)
    w = complex(weight_complex(z))
    g = complex(_g(p, z))
    lam, c1, n = p.spectral_lambda, p.c1, p.n
    u11 = -(n / 8) * g / w
    u12 = -(lam * c1**2 / 16) / w
    u21 = n**2 / (4 * lam * c1**2) * g * g / w
    return FrameMatrix(u11, u12, u21, -u11, "sl2")


@lru_cache(maxsize=64)
def _solution_parts(n: int, K: int | None):
    K = max(default_truncation(n), 80) if K is None else K
    return alpha(n, K), beta(n, K)


def first_component(p: WeierstrassParams, k1, k2, z, order: int = 0, K: int | None = None):
    """``k1 alpha_n + k2 beta_n`` (or a derivative) with exact series differentiation."""
    a, b = _solution_parts(p.n, K)
    out = 0
    if k1:
        out = out + k1 * a.derivative(z, order)
    if k2:
        out = out + k2 * b.derivative(z, order)
    return out


def wavefunction(p: WeierstrassParams, k1, k2, z, K: int | None = None) -> tuple[complex, complex]:
    """``Psi1 = k1 alpha + k2 beta`` and ``Psi2 = chi Psi1 - Psi1' / (lambda eta^2)``.

    Solves the linear problem only for ``chi_form="associated"``.
    """
    psi1 = complex(first_component(p, k1, k2, z, 0, K))
    dpsi1 = complex(first_component(p, k1, k2, z, 1, K))
    psi2 = complex(chi(p, z)) * psi1 - dpsi1 / (p.spectral_lambda * complex(eta_squared(p, z)))
    return psi1, psi2


# meshes ------------------------------------------------------------------------
def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _walk_i4(xi0: complex, x: np.ndarray, y: np.ndarray):
    """Erf^2 integral from xi0 at every grid vertex by incremental path walks.

    One adaptive integral reaches the corner ``x[0] + i y[0]``; short
    segments then climb the first column and run along each row. Sums use
    ``cumsum`` in a fixed order, so results are reproducible.
    """
    corner = complex(x[0], y[0])
    try:
        base = i4_integral(xi0, corner)
    except QuadratureError as exc:
        raise QuadratureError(f"{exc} (vertex x={x[0]!r}, y={y[0]!r})", exc.estimates) from exc
    col = x[0] + 1j * y
    dv, ev = integrate_segments(_integrand_i4, col[:-1], col[1:])
    col_val = base.value + np.concatenate([[0], np.cumsum(dv)])
    col_err = base.error + np.concatenate([[0], np.cumsum(ev)])
    grid = x[:, None] + 1j * y[None, :]
    dh, eh = integrate_segments(_integrand_i4, grid[:-1, :], grid[1:, :])
    vals = col_val[None, :] + np.concatenate([np.zeros((1, len(y))), np.cumsum(dh, axis=0)])
    errs = col_err[None, :] + np.concatenate([np.zeros((1, len(y))), np.cumsum(eh, axis=0)])
    return vals, errs


def _walk_direct(p: WeierstrassParams, x, y):
    """Fallback: every integrand by incremental quadrature."""
    out, err = [], np.zeros((len(x), len(y)))
    for k in range(3):
        f = lambda z, k=k: integrands(p, z)[k]  # noqa: E731
        try:
            corner = integrate_path(f, PathSegment(p.xi0, complex(x[0], y[0])))
        except QuadratureError as exc:
            raise QuadratureError(f"{exc} (vertex x={x[0]!r}, y={y[0]!r})", exc.estimates) from exc
        col = x[0] + 1j * y
        dv, ev = integrate_segments(f, col[:-1], col[1:])
        col_val = corner.value + np.concatenate([[0], np.cumsum(dv)])
        grid = x[:, None] + 1j * y[None, :]
        dh, eh = integrate_segments(f, grid[:-1, :], grid[1:, :])
        out.append(col_val[None, :] + np.concatenate([np.zeros((1, len(y))), np.cumsum(dh, axis=0)]))
        err += corner.error + np.concatenate([[0], np.cumsum(ev)])[None, :]
        err += np.concatenate([np.zeros((1, len(y))), np.cumsum(eh, axis=0)])
    return out, err


def generate_mesh(
    p: WeierstrassParams,
    domain=(-1.0, 1.0, -1.0, 1.0),
    nu: int = 41,
    nv: int = 41,
) -> SurfaceMesh:
    """Sample the immersion on ``nu x nv`` points of ``[x0, x1] x [y0, y1]``."""
    if nu < 2 or nv < 2:
        raise XhermError("mesh needs at least 2 points per direction")
    x0, x1, y0, y1 = (float(v) for v in domain)
    if not (x1 > x0 and y1 > y0):
        raise XhermError("domain bounds must be strictly increasing")
    x = np.linspace(x0, x1, nu)
    y = np.linspace(y0, y1, nv)
    grid = x[:, None] + 1j * y[None, :]
    if np.any(np.abs(1 + 2 * grid**2) < 1e-12):
        raise SingularPointError("mesh passes through z = +-i/sqrt(2)")

    if not brackets_valid(p.chi_form):
        (i1, i2, i3), err = _walk_direct(p, x, y)
    else:
        base = _bracket_values(p, p.xi0)
        k4 = _coefficients(p)[4]

        def rows(sl):
            b = _bracket_values(p, grid[sl])
            return [v - b0 for v, b0 in zip(b, base)]

        w = _workers()
        if w > 1 and nu > 1:
            chunks = np.array_split(np.arange(nu), min(w, nu))
            with ThreadPoolExecutor(max_workers=w) as ex:
                parts = list(ex.map(lambda idx: rows(slice(idx[0], idx[-1] + 1)), chunks))
            i1, i2, i3 = (np.concatenate([pt[k] for pt in parts]) for k in range(3))
        else:
            i1, i2, i3 = rows(slice(None))
        if p.n:
            v4, e4 = _walk_i4(p.xi0, x, y)
            i2 = i2 + k4 * v4
            err = abs(k4) * e4
        else:
            err = np.zeros(grid.shape)
    pts = surface_from_integrals(i1, i2, i3)
    if not np.all(np.isfinite(pts)):
        bad = np.argwhere(~np.isfinite(pts).all(axis=-1))[0]
        raise XhermError(f"non-finite surface point at x={x[bad[0]]}, y={y[bad[1]]}")
    return SurfaceMesh(p, x, y, pts, np.asarray(err, dtype=float), np.stack([i1, i2, i3], axis=-1))

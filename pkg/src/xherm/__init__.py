"""Exceptional Hermite polynomials of the partition (1), their series solutions,
and the Enneper-Weierstrass minimal surfaces built from them."""

from .errors import (
    ConvergenceError,
    GapSequenceError,
    PrecisionWarning,
    QuadratureError,
    SingularPointError,
    XhermError,
)
from .exceptional import X21, XopFamily, hhat, norm_squared, norm_squared_exact, potential, weight, xop_polynomial
from .hermite import hermite, hhat_gap
from .partitions import GapSequence, Partition, codimension, double_partition, excluded_indices, gap_sequence, is_adler
from .polynomial import RationalPoly, wronskian
from .series import SeriesSolution, alpha, beta, m1, m2, m3, mu, nu
from .special import erf, erfi, hyp2f2
from .weierstrass import SurfaceMesh, WeierstrassParams, generate_mesh, immersion_point, su2_matrix, wavefunction

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "GapSequenceError", "PrecisionWarning", "QuadratureError", "SingularPointError",
    "XhermError", "X21", "XopFamily", "hhat", "norm_squared", "norm_squared_exact", "potential", "weight",
    "xop_polynomial", "hermite", "hhat_gap", "GapSequence", "Partition", "codimension", "double_partition",
    "excluded_indices", "gap_sequence", "is_adler", "RationalPoly", "wronskian", "SeriesSolution", "alpha",
    "beta", "m1", "m2", "m3", "mu", "nu", "erf", "erfi", "hyp2f2", "SurfaceMesh", "WeierstrassParams",
    "generate_mesh", "immersion_point", "su2_matrix", "wavefunction",
]

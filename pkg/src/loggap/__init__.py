"""Gap statistics of logarithmic fractional-part sequences.

Empirical machinery for the scaled gaps of frac(log_b n), the exact mixed
limit distributions they converge to (transcendental, integer, and
integer-root bases), and the superposed-progression counting model that
underlies them.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .limitdist import (
    MixedDensity,
    Piece,
    cdf,
    family_E,
    limit_R,
    limit_gap_density,
    limit_joint_density,
    rescaled_limit_density,
    rho,
)
from .sequence import (
    BaseKind,
    GapSample,
    LogBase,
    OrderedFracs,
    generate_raw,
    generate_shifted,
    order_and_gaps,
    sequence_values,
    unfold,
)
from .stats import (
    ComparisonReport,
    EmpiricalCDF,
    compare,
    empirical_cdf,
    ks_distance,
    ks_distance_2samp,
)
from .superposition import (
    CountingModel,
    E1,
    E_conv,
    enumerate_gaps,
    gap_density_omega,
    mc_estimate_E,
    window_count,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    "BaseKind",
    "LogBase",
    "OrderedFracs",
    "GapSample",
    "generate_raw",
    "generate_shifted",
    "unfold",
    "order_and_gaps",
    "sequence_values",
    "MixedDensity",
    "Piece",
    "rho",
    "limit_R",
    "limit_gap_density",
    "limit_joint_density",
    "rescaled_limit_density",
    "family_E",
    "cdf",
    "CountingModel",
    "E1",
    "E_conv",
    "window_count",
    "gap_density_omega",
    "mc_estimate_E",
    "enumerate_gaps",
    "EmpiricalCDF",
    "ComparisonReport",
    "empirical_cdf",
    "ks_distance",
    "ks_distance_2samp",
    "compare",
]

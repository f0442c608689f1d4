"""Empirical distribution machinery and theory-vs-data distances.

All acceptance-grade comparisons go through CDFs: with atoms in play,
density comparison is ill-posed while the sup-CDF distance is exact.
Histograms exist for reporting and plot data only.
"""

from dataclasses import dataclass

import numpy as np

from ._density import MixedDensity
from .sequence import GapSample

__all__ = [
    "EmpiricalCDF",
    "JointHistogram",
    "ComparisonReport",
    "empirical_cdf",
    "ks_distance",
    "ks_distance_2samp",
    "joint_histogram",
    "density_fraction",
    "compare",
]


@dataclass(frozen=True)
class EmpiricalCDF:
    """Step CDF of a sorted sample."""

    values: np.ndarray
    n: int

    def evaluate(self, s: float) -> float:
        """F-hat(s) = (# values <= s) / n."""
        return int(np.searchsorted(self.values, s, side="right")) / self.n

    def evaluate_left(self, s: float) -> float:
        """Left limit F-hat(s-) = (# values < s) / n."""
        return int(np.searchsorted(self.values, s, side="left")) / self.n

    def evaluate_many(self, ss) -> np.ndarray:
        return np.searchsorted(self.values, ss, side="right") / self.n

    @property
    def zero_fraction(self) -> float:
        """Fraction of exactly-zero samples (exact collisions, not small
        gaps: the sequence module snaps only representable ties)."""
        return self.evaluate(0.0)


def empirical_cdf(gaps) -> EmpiricalCDF:
    """Empirical CDF of a GapSample (its scaled gaps) or a plain array."""
    values = gaps.scaled_gaps if isinstance(gaps, GapSample) else np.asarray(gaps)
    if len(values) == 0:
        raise ValueError("empirical_cdf requires a nonempty sample")
    return EmpiricalCDF(values=np.sort(values), n=len(values))


def _excluded(s: float, exclude) -> bool:
    return any(lo <= s <= hi for lo, hi in exclude)


def ks_distance(emp: EmpiricalCDF, theory: MixedDensity, exclude=()) -> float:
    """Exact sup |F-hat - F| between a step CDF and a mixed theory CDF.

    The sup is attained at sample points or theory atoms, approached from
    either side; both one-sided values are evaluated at each candidate.
    ``exclude`` lists closed intervals (lo, hi) of s to skip, for
    comparisons "away from an atom".
    """
    candidates = np.unique(
        np.concatenate([emp.values, np.asarray(theory.boundaries, dtype=np.float64)])
    )
    best = 0.0
    for s in candidates:
        s = float(s)
        if _excluded(s, exclude):
            continue
        th = theory.cdf(s)
        d_right = abs(emp.evaluate(s) - th)
        d_left = abs(emp.evaluate_left(s) - (th - theory.atom_mass(s)))
        if d_right > best:
            best = d_right
        if d_left > best:
            best = d_left
    return float(best)


def ks_distance_2samp(emp1: EmpiricalCDF, emp2: EmpiricalCDF) -> float:
    """Two-sample sup distance between step CDFs."""
    grid = np.concatenate([emp1.values, emp2.values])
    return float(
        np.max(np.abs(emp1.evaluate_many(grid) - emp2.evaluate_many(grid)))
    )


@dataclass(frozen=True)
class JointHistogram:
    """2-D counts of (anchor, scaled gap) pairs over [0,1] x [0, s_max];
    gaps beyond s_max land in the flagged overflow column."""

    counts: np.ndarray
    overflow: np.ndarray
    x_edges: np.ndarray
    s_edges: np.ndarray
    total: int

    @property
    def x_width(self) -> float:
        return float(self.x_edges[1] - self.x_edges[0])

    @property
    def s_width(self) -> float:
        return float(self.s_edges[1] - self.s_edges[0])

    def x_marginal(self) -> np.ndarray:
        return self.counts.sum(axis=1) + self.overflow

    def s_marginal(self) -> np.ndarray:
        return self.counts.sum(axis=0)


def joint_histogram(
    gaps: GapSample, x_bins: int, s_bins: int, s_max: float
) -> JointHistogram:
    if x_bins < 1 or s_bins < 1:
        raise ValueError("bin counts must be >= 1")
    inside = gaps.scaled_gaps < s_max
    counts, x_edges, s_edges = np.histogram2d(
        gaps.anchors[inside],
        gaps.scaled_gaps[inside],
        bins=[x_bins, s_bins],
        range=[[0.0, 1.0], [0.0, s_max]],
    )
    overflow, _ = np.histogram(
        gaps.anchors[~inside], bins=x_bins, range=(0.0, 1.0)
    )
    return JointHistogram(
        counts=counts,
        overflow=overflow.astype(np.float64),
        x_edges=x_edges,
        s_edges=s_edges,
        total=gaps.n,
    )


def density_fraction(values, interval) -> float:
    """Fraction of values in [lo, hi) with 0 <= lo < hi <= 1."""
    lo, hi = interval
    if not 0.0 <= lo < hi <= 1.0:
        raise ValueError(f"need 0 <= lo < hi <= 1, got [{lo}, {hi})")
    values = np.asarray(values)
    return float(np.count_nonzero((values >= lo) & (values < hi))) / len(values)


@dataclass(frozen=True)
class ComparisonReport:
    sup_cdf_distance: float
    l1_density_distance: float
    atom_mass_errors: tuple[tuple[float, float], ...]
    sample_size: int
    notes: str = ""

    def __post_init__(self):
        if self.sup_cdf_distance < 0 or self.l1_density_distance < 0:
            raise ValueError("distances must be nonnegative")


def compare(
    gaps: GapSample,
    theory: MixedDensity,
    bins: int = 50,
    atom_exclusion: float = 0.0,
    notes: str = "",
) -> ComparisonReport:
    """Empirical-vs-theory distances for a gap sample.

    sup_cdf_distance is the exact KS distance, excluding a radius
    ``atom_exclusion`` around each theory atom when requested.  The L1
    distance bins both laws over [0, support]; empirical atom masses are
    exact-value counts (an atom is an exact collision, never a small gap).
    """
    emp = empirical_cdf(gaps)
    exclude = (
        tuple(
            (loc - atom_exclusion, loc + atom_exclusion)
            for loc, _ in theory.atoms
        )
        if atom_exclusion > 0
        else ()
    )
    sup = ks_distance(emp, theory, exclude=exclude)

    s_hi = max(theory.support_max, float(emp.values[-1]))
    edges = np.linspace(0.0, s_hi, bins + 1)
    emp_cdf_vals = emp.evaluate_many(edges)
    th_cdf_vals = theory.cdf_many(edges) / theory.total_mass
    l1 = float(np.sum(np.abs(np.diff(emp_cdf_vals) - np.diff(th_cdf_vals))))

    atom_errors = []
    for loc, mass in theory.atoms:
        emp_mass = emp.evaluate(loc) - emp.evaluate_left(loc)
        atom_errors.append((loc, abs(emp_mass - mass)))

    return ComparisonReport(
        sup_cdf_distance=sup,
        l1_density_distance=l1,
        atom_mass_errors=tuple(atom_errors),
        sample_size=emp.n,
        notes=notes,
    )

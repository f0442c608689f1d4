"""Logarithmic fractional-part sequences and their scaled gaps.

The raw sequence is frac(log_b n) for n = 1..N; the shifted variant
subtracts log_b N mod 1 (a rigid rotation, gaps unchanged); the unfolded
variant applies the monotone map T(x) = (b^x - 1)/(b - 1) which makes the
point set uniformly distributed mod 1.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels

__all__ = [
    "BaseKind",
    "LogBase",
    "OrderedFracs",
    "GapSample",
    "generate_raw",
    "generate_shifted",
    "unfold",
    "order_and_gaps",
    "sequence_values",
]


class BaseKind(enum.Enum):
    TRANSCENDENTAL = "transcendental"
    INTEGER = "integer"
    INTEGER_ROOT = "integer_root"


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


@dataclass(frozen=True)
class LogBase:
    """A classified logarithm base b > 1.

    Transcendence is declared by the caller, never detected.  Integer bases
    require b >= 2 integral.  Root bases b = m**(1/r) require r >= 2 and
    that m**(1/p) is irrational for every prime p dividing r (so collisions
    in the sequence come only from the n <-> m*n relation).
    """

    kind: BaseKind
    b: float
    m: int | None = None
    r: int | None = None

    def __post_init__(self):
        if not self.b > 1.0:
            raise ValueError(f"base must satisfy b > 1, got {self.b}")
        if self.kind is BaseKind.INTEGER:
            if self.m is None or self.m < 2 or self.m != self.b:
                raise ValueError("integer base requires integral b >= 2")
        elif self.kind is BaseKind.INTEGER_ROOT:
            m, r = self.m, self.r
            if m is None or r is None or m < 2 or r < 1:
                raise ValueError("root base requires m >= 2 and r >= 1")
            if r == 1:
                raise ValueError("r = 1 is an integer base; use LogBase.integer")
            for p in _prime_factors(r):
                root = round(m ** (1.0 / p))
                if root**p == m:
                    raise ValueError(
                        f"m**(1/{p}) is the integer {root}; "
                        f"reduce m={m}, r={r} to a smaller root"
                    )

    @classmethod
    def transcendental(cls, b: float) -> "LogBase":
        return cls(BaseKind.TRANSCENDENTAL, float(b))

    @classmethod
    def integer(cls, b: int) -> "LogBase":
        bi = int(b)
        if bi != b:
            raise ValueError(f"integer base must be integral, got {b}")
        return cls(BaseKind.INTEGER, float(bi), m=bi, r=1)

    @classmethod
    def integer_root(cls, m: int, r: int) -> "LogBase":
        return cls(BaseKind.INTEGER_ROOT, float(m) ** (1.0 / r), m=int(m), r=int(r))

    @property
    def ln_b(self) -> float:
        if self.kind is BaseKind.INTEGER_ROOT:
            return math.log(self.m) / self.r
        return math.log(self.b)

    @property
    def q(self) -> float:
        """Damping ratio 1/b of the limit formulas."""
        return 1.0 / self.b

    @property
    def finite_order(self) -> int | None:
        """Pochhammer truncation order of the limit law: 1 for integer
        bases, r for root bases, None (infinite) for transcendental."""
        if self.kind is BaseKind.INTEGER:
            return 1
        if self.kind is BaseKind.INTEGER_ROOT:
            return self.r
        return None

    def describe(self) -> str:
        if self.kind is BaseKind.INTEGER:
            return f"int:{self.m}"
        if self.kind is BaseKind.INTEGER_ROOT:
            return f"root:{self.m}:{self.r}"
        return f"transcendental:{self.b!r}"


@dataclass(frozen=True)
class OrderedFracs:
    """Sorted fractional parts with the wrap element values[0] + 1."""

    n_count: int
    values: np.ndarray
    wrap: float
    provenance: str = "raw"

    def __post_init__(self):
        v = self.values
        if len(v) != self.n_count:
            raise ValueError("length mismatch")
        if len(v) and (v[0] < 0.0 or v[-1] >= 1.0):
            raise ValueError("values must lie in [0, 1)")
        if np.any(np.diff(v) < 0):
            raise ValueError("values must be sorted ascending")
        if len(v) and self.wrap != v[0] + 1.0:
            raise ValueError("wrap must equal values[0] + 1")


@dataclass(frozen=True)
class GapSample:
    """Scaled gaps s_n = N*(x_{n+1} - x_n) (wrap included) and anchors x_n."""

    scaled_gaps: np.ndarray
    anchors: np.ndarray

    def __post_init__(self):
        if len(self.scaled_gaps) != len(self.anchors):
            raise ValueError("gaps and anchors must have equal length")
        if np.any(self.scaled_gaps < 0):
            raise ValueError("scaled gaps must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.scaled_gaps)

    @property
    def zero_fraction(self) -> float:
        """Fraction of exactly-zero gaps (exact collisions only)."""
        return float(np.count_nonzero(self.scaled_gaps == 0.0)) / self.n


def generate_raw(base: LogBase, n_count: int) -> np.ndarray:
    """Fractional parts of log_b n for n = 1..n_count, unsorted.

    For integer and root bases the value is computed from the m-free part
    of n, making the n <-> m*n collisions exact.
    """
    if n_count < 1:
        raise ValueError("n_count must be >= 1")
    if base.kind is BaseKind.TRANSCENDENTAL:
        return _kernels.frac_log(n_count, base.ln_b)
    r = 1 if base.kind is BaseKind.INTEGER else base.r
    return _kernels.frac_log_root(n_count, base.m, r)


def generate_shifted(base: LogBase, n_count: int) -> np.ndarray:
    """Fractional parts of log_b(n / n_count) = frac(xi_n - xi_N).

    A rigid rotation of the raw sequence mod 1: the ordered gap multiset
    (wrap gap included) is unchanged.
    """
    raw = generate_raw(base, n_count)
    v = raw - raw[-1]
    v[v < 0.0] += 1.0
    v[v > 1.0 - _kernels.SNAP_EPS] = 0.0
    return v


def unfold(etas: np.ndarray, base: LogBase) -> np.ndarray:
    """Apply T(x) = (b^x - 1)/(b - 1) elementwise; strictly increasing,
    maps [0, 1) onto [0, 1)."""
    etas = np.asarray(etas, dtype=np.float64)
    if etas.size and (etas.min() < 0.0 or etas.max() >= 1.0):
        raise ValueError("unfold inputs must lie in [0, 1)")
    return np.expm1(etas * base.ln_b) / (base.b - 1.0)


def order_and_gaps(
    values: np.ndarray, n_count: int, provenance: str = "raw"
) -> tuple[OrderedFracs, GapSample]:
    """Stable-sort the values, append the wrap element, and extract the
    N scaled gaps (which sum to N exactly up to rounding)."""
    values = np.asarray(values, dtype=np.float64)
    if len(values) != n_count:
        raise ValueError(f"expected {n_count} values, got {len(values)}")
    ordered = np.sort(values, kind="stable")
    wrap = ordered[0] + 1.0
    diffs = np.empty(n_count, dtype=np.float64)
    if n_count > 1:
        np.subtract(ordered[1:], ordered[:-1], out=diffs[:-1])
    diffs[-1] = wrap - ordered[-1]
    gaps = GapSample(scaled_gaps=n_count * diffs, anchors=ordered)
    fracs = OrderedFracs(
        n_count=n_count, values=ordered, wrap=wrap, provenance=provenance
    )
    return fracs, gaps


def sequence_values(base: LogBase, n_count: int, kind: str = "raw") -> np.ndarray:
    """The chosen sequence variant: 'raw' (xi), 'shifted' (eta), or
    'unfolded' (eta-tilde)."""
    if kind == "raw":
        return generate_raw(base, n_count)
    if kind == "shifted":
        return generate_shifted(base, n_count)
    if kind == "unfolded":
        return unfold(generate_shifted(base, n_count), base)
    raise ValueError(f"unknown sequence kind {kind!r}")

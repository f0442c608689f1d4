"""Superposed arithmetic progressions: counting statistics and gap law.

The model is the multiset union of J progressions beta_j + (1/omega_j) * Z
with frequencies omega_j > 0.  Window counts factorize over progressions,
giving the convolution formula E(k, L); the gap intensity density P_omega
follows as the second L-derivative of E(0, L).
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._density import MixedDensity, Piece

__all__ = [
    "CountingModel",
    "WindowCount",
    "nearest_int_dist",
    "lattice_count",
    "window_count",
    "E1",
    "E_conv",
    "E_conv_vector",
    "gap_density_omega",
    "mc_estimate_E",
    "enumerate_gaps",
]


@dataclass(frozen=True)
class CountingModel:
    """Frequencies and phases of the progression multiset."""

    omegas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.omegas) < 1:
            raise ValueError("need at least one progression")
        if len(self.omegas) != len(self.betas):
            raise ValueError("omegas and betas must have equal length")
        if any(w <= 0 for w in self.omegas):
            raise ValueError("frequencies must be positive")

    @classmethod
    def of(cls, omegas, betas=None) -> "CountingModel":
        omegas = tuple(float(w) for w in omegas)
        if betas is None:
            betas = (0.0,) * len(omegas)
        return cls(omegas, tuple(float(b) for b in betas))

    @property
    def J(self) -> int:
        return len(self.omegas)

    @property
    def intensity(self) -> float:
        return sum(self.omegas)


@dataclass(frozen=True)
class WindowCount:
    t: float
    L: float
    per_progression: tuple[int, ...]
    total: int


def nearest_int_dist(x: float) -> float:
    """Distance from x to the nearest integer, in [0, 1/2]."""
    return abs(x - np.rint(x))


def lattice_count(x: float, L: float) -> int:
    """Number of integers in the closed interval [x - L/2, x + L/2].

    Debug builds assert the characterization: the count equals k iff the
    distance |x - k/2| to the nearest integer is >= (k - L)/2 and
    > (L - k)/2.
    """
    if L < 0:
        raise ValueError("window length must be >= 0")
    half = L / 2.0
    k = int(math.floor(x + half) - math.ceil(x - half)) + 1
    if __debug__:
        d = nearest_int_dist(x - 0.5 * k)
        assert d >= 0.5 * (k - L) - 1e-9 and d > 0.5 * (L - k) - 1e-9, (
            f"count characterization violated: x={x}, L={L}, k={k}, d={d}"
        )
    return k


def window_count(model: CountingModel, t: float, L: float) -> WindowCount:
    """Per-progression and total counts in [t - L/2, t + L/2].

    Each progression is rescaled to the integer lattice; the band
    omega_j*L - 1 < N_j <= omega_j*L + 1 is asserted in debug builds.
    """
    if L < 0:
        raise ValueError("window length must be >= 0")
    per = []
    for w, beta in zip(model.omegas, model.betas):
        nj = lattice_count(w * (t - beta), w * L)
        assert w * L - 1.0 < nj <= w * L + 1.0
        per.append(nj)
    return WindowCount(t=t, L=L, per_progression=tuple(per), total=sum(per))


def E1(k: int, L: float) -> float:
    """Probability that a random unit-shifted lattice puts exactly k points
    in a length-L window: the tent 1 - |k - L| on (L-1, L+1)."""
    if k < 0 or L < 0:
        raise ValueError("k and L must be >= 0")
    d = abs(k - L)
    return 1.0 - d if d < 1.0 else 0.0


def E_conv_vector(k_max: int, L: float, omegas) -> np.ndarray:
    """[E(0, L), ..., E(k_max, L)] by sequential convolution over the
    progressions.  Each factor E1(., w*L) has at most two support points,
    so the cost is O(J * k_max)."""
    if k_max < 0 or L < 0:
        raise ValueError("k_max and L must be >= 0")
    width = k_max + 1
    dist = [0.0] * width
    dist[0] = 1.0
    for w in omegas:
        x = w * L
        lo = int(math.floor(x))
        w_lo = E1(lo, x) if lo >= 0 else 0.0
        w_hi = E1(lo + 1, x)
        out = [0.0] * width
        if w_lo:
            if lo == 0:
                out = [w_lo * d for d in dist]
            elif lo <= k_max:
                for i in range(width - lo):
                    out[i + lo] = w_lo * dist[i]
        if w_hi and lo + 1 <= k_max:
            shift = lo + 1
            for i in range(width - shift):
                out[i + shift] += w_hi * dist[i]
        dist = out
    return np.asarray(dist)


def E_conv(k: int, L: float, omegas) -> float:
    """Probability of exactly k points in a random length-L window:
    sum over k_1 + ... + k_J = k of prod_j E1(k_j, omega_j * L)."""
    return float(E_conv_vector(k, L, omegas)[k])


def gap_density_omega(omegas) -> MixedDensity:
    """Limiting gap intensity density of the superposed progressions.

    Requires the first frequency to be strictly the largest.  The density
    carries an atom of mass omega_1 * prod_{j>=2}(1 - omega_j/omega_1) at
    s = 1/omega_1 and a polynomial continuous part below it; it integrates
    to the intensity sum(omegas) and has unit mean gap.
    """
    w = [float(x) for x in omegas]
    if len(w) < 1 or any(x <= 0 for x in w):
        raise ValueError("need positive frequencies")
    if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
        raise ValueError("frequencies must be sorted descending")
    if len(w) > 1 and w[0] <= w[1]:
        raise ValueError("the largest frequency must be strictly unique")
    w1 = w[0]
    smax = 1.0 / w1
    atom_mass = w1 * math.prod(1.0 - wj / w1 for wj in w[1:])
    intensity = sum(w)
    warr = np.asarray(w)

    def pdf(s: float) -> float:
        if not 0.0 < s < smax:
            return 0.0
        total = 0.0
        for h in range(len(w)):
            for i in range(len(w)):
                if h == i:
                    continue
                mask = np.ones(len(w), dtype=bool)
                mask[h] = mask[i] = False
                total += w[h] * w[i] * float(np.prod(1.0 - warr[mask] * s))
        return total

    def cdf(s: float) -> float:
        if s < 0.0:
            return 0.0
        if s >= smax:
            return intensity
        acc = intensity
        for j in range(len(w)):
            mask = np.ones(len(w), dtype=bool)
            mask[j] = False
            acc -= w[j] * float(np.prod(1.0 - warr[mask] * s))
        return acc

    pieces = (Piece(0.0, smax, pdf),) if len(w) > 1 else ()
    return MixedDensity(
        atoms=((smax, atom_mass),),
        pieces=pieces,
        total_mass=intensity,
        cdf_fn=cdf,
        label="gap intensity",
    )


def _thread_count() -> int:
    raw = os.environ.get("LOGGAP_THREADS", "").strip()
    if not raw:
        return 1
    n = int(raw)
    if n < 1:
        raise ValueError("LOGGAP_THREADS must be >= 1")
    return n


def _counts_for(model: CountingModel, ts: np.ndarray, L: float) -> np.ndarray:
    """Window counts for a batch of t values, optionally sharded across
    threads (integer partial results, so sharding cannot change the
    outcome)."""
    threads = _thread_count()
    omegas = np.asarray(model.omegas, dtype=np.float64)
    betas = np.asarray(model.betas, dtype=np.float64)
    if threads == 1 or len(ts) < 4 * threads:
        return _kernels.window_count_batch(ts, L, omegas, betas)
    chunks = np.array_split(ts, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(
            pool.map(
                lambda chunk: _kernels.window_count_batch(chunk, L, omegas, betas),
                chunks,
            )
        )
    return np.concatenate(parts)


def mc_estimate_E(
    model: CountingModel,
    k: int,
    L: float,
    t_range: tuple[float, float],
    T: float,
    samples: int,
    seed: int,
) -> tuple[float, float]:
    """Monte-Carlo estimate of the fraction of window centers t in
    [a*T, b*T] with exactly k points, and its standard error
    sqrt(p*(1-p)/samples).

    Uses a counter-based (Philox) generator keyed by the seed, so results
    are reproducible bit-for-bit for a given (seed, samples).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    a, b = t_range
    if not a < b:
        raise ValueError("t_range must satisfy a < b")
    rng = np.random.Generator(np.random.Philox(seed))
    ts = rng.uniform(a * T, b * T, samples)
    counts = _counts_for(model, ts, L)
    p = float(np.count_nonzero(counts == k)) / samples
    return p, math.sqrt(p * (1.0 - p) / samples)


def enumerate_gaps(model: CountingModel, interval: tuple[float, float]) -> np.ndarray:
    """Consecutive differences of the merged, sorted progression points in
    [lo, hi]; multiplicities produce exact zero gaps."""
    lo, hi = interval
    if not hi > lo:
        raise ValueError("interval must satisfy hi > lo")
    pts = _kernels.merge_progressions(
        np.asarray(model.omegas, dtype=np.float64),
        np.asarray(model.betas, dtype=np.float64),
        float(lo),
        float(hi),
    )
    if len(pts) < 2:
        return np.empty(0, dtype=np.float64)
    return np.diff(pts)

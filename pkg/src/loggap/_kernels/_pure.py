"""Pure-numpy reference kernels.

These mirror the compiled kernels in ``_core.pyx``.  Both backends use the
same arithmetic expressions so that results agree bit-for-bit wherever the
underlying libm calls do (and to within 1 ulp elsewhere).
"""

import math

import numpy as np

# Fractional parts landing within SNAP_EPS of 1.0 are wrapped down to 0.0 so
# that exact-in-theory ties survive float noise.
SNAP_EPS = 1e-12


def frac_log(n_count, ln_b):
    """Fractional parts of log(n)/ln_b for n = 1..n_count."""
    n = np.arange(1, n_count + 1, dtype=np.float64)
    v = np.log(n) / ln_b
    v -= np.floor(v)
    v[v > 1.0 - SNAP_EPS] = 0.0
    return v


def frac_log_root(n_count, m, r):
    """Fractional parts of r*log(n)/log(m) for n = 1..n_count.

    The value for n is computed from the m-free part of n (n with all
    factors of m divided out), so n and m*n yield bitwise-identical
    fractional parts and collisions are exact.
    """
    nprime = np.arange(1, n_count + 1, dtype=np.int64)
    mask = nprime % m == 0
    while mask.any():
        nprime[mask] //= m
        mask = nprime % m == 0
    ln_m = math.log(m)
    v = r * (np.log(nprime.astype(np.float64)) / ln_m)
    v -= np.floor(v)
    v[v > 1.0 - SNAP_EPS] = 0.0
    return v


def window_count_batch(ts, L, omegas, betas):
    """Total points of the progression multiset in [t - L/2, t + L/2] per t.

    Progression j rescales to the integer lattice: the count is the number
    of integers in [x - w*L/2, x + w*L/2] with x = w*(t - beta), endpoints
    included.
    """
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    total = np.zeros(ts.shape[0], dtype=np.int64)
    for w, beta in zip(omegas, betas):
        x = w * (ts - beta)
        half = w * L / 2.0
        total += (np.floor(x + half) - np.ceil(x - half)).astype(np.int64) + 1
    return total


def merge_progressions(omegas, betas, lo, hi):
    """Sorted points of all progressions beta_j + k/omega_j inside [lo, hi].

    The compiled backend performs a J-way heap merge; here the parts are
    concatenated and sorted globally, which yields the identical array.
    """
    parts = []
    for w, beta in zip(omegas, betas):
        k0 = math.ceil((lo - beta) * w)
        k1 = math.floor((hi - beta) * w)
        if k1 >= k0:
            ks = np.arange(k0, k1 + 1, dtype=np.float64)
            parts.append(beta + ks / w)
    if not parts:
        return np.empty(0, dtype=np.float64)
    out = np.concatenate(parts)
    out.sort()
    return out

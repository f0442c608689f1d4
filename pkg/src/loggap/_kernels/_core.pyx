# cython: language_level=3
"""Compiled kernels: fractional-part sequences, window counts, merges.

Semantics must match ``_pure.py`` exactly; keep arithmetic expressions in
the same order in both files.
"""

import numpy as np

from libc.math cimport ceil, floor, log

cdef double SNAP_EPS = 1e-12


def frac_log(Py_ssize_t n_count, double ln_b):
    """Fractional parts of log(n)/ln_b for n = 1..n_count."""
    out = np.empty(n_count, dtype=np.float64)
    cdef double[::1] v = out
    cdef Py_ssize_t i
    cdef double x
    for i in range(n_count):
        x = log(<double> (i + 1)) / ln_b
        x -= floor(x)
        if x > 1.0 - SNAP_EPS:
            x = 0.0
        v[i] = x
    return out


def frac_log_root(Py_ssize_t n_count, long long m, long long r):
    """Fractional parts of r*log(n)/log(m), computed from the m-free part
    of n so that n and m*n collide exactly."""
    out = np.empty(n_count, dtype=np.float64)
    cdef double[::1] v = out
    cdef double ln_m = log(<double> m)
    cdef double rd = <double> r
    cdef Py_ssize_t i
    cdef long long n
    cdef double x
    for i in range(n_count):
        n = i + 1
        while n % m == 0:
            n //= m
        x = rd * (log(<double> n) / ln_m)
        x -= floor(x)
        if x > 1.0 - SNAP_EPS:
            x = 0.0
        v[i] = x
    return out


def window_count_batch(ts, double L, omegas, betas):
    """Total points of the progression multiset in [t - L/2, t + L/2] per t."""
    cdef double[::1] tv = np.ascontiguousarray(ts, dtype=np.float64)
    cdef double[::1] wv = np.ascontiguousarray(omegas, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(betas, dtype=np.float64)
    cdef Py_ssize_t ns = tv.shape[0]
    cdef Py_ssize_t nj = wv.shape[0]
    out = np.zeros(ns, dtype=np.int64)
    cdef long long[::1] tot = out
    cdef Py_ssize_t i, j
    cdef double x, half, w, beta
    for j in range(nj):
        w = wv[j]
        beta = bv[j]
        half = w * L / 2.0
        for i in range(ns):
            x = w * (tv[i] - beta)
            tot[i] += <long long> (floor(x + half) - ceil(x - half)) + 1
    return out


def merge_progressions(omegas, betas, double lo, double hi):
    """J-way heap merge of the progressions beta_j + k/omega_j over [lo, hi]."""
    cdef double[::1] wv = np.ascontiguousarray(omegas, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(betas, dtype=np.float64)
    cdef Py_ssize_t nj = wv.shape[0]

    k0_arr = np.empty(nj, dtype=np.int64)
    k1_arr = np.empty(nj, dtype=np.int64)
    cdef long long[::1] k0 = k0_arr
    cdef long long[::1] k1 = k1_arr
    cdef Py_ssize_t j
    cdef Py_ssize_t total = 0
    for j in range(nj):
        k0[j] = <long long> ceil((lo - bv[j]) * wv[j])
        k1[j] = <long long> floor((hi - bv[j]) * wv[j])
        if k1[j] >= k0[j]:
            total += <Py_ssize_t> (k1[j] - k0[j] + 1)

    out = np.empty(total, dtype=np.float64)
    cdef double[::1] ov = out
    if total == 0:
        return out

    # Binary min-heap of (current point, progression index).
    heap_key_arr = np.empty(nj, dtype=np.float64)
    heap_src_arr = np.empty(nj, dtype=np.int64)
    next_k_arr = np.empty(nj, dtype=np.int64)
    cdef double[::1] hkey = heap_key_arr
    cdef long long[::1] hsrc = heap_src_arr
    cdef long long[::1] nextk = next_k_arr

    cdef Py_ssize_t hsize = 0
    cdef Py_ssize_t pos, child, parent
    cdef double key
    cdef long long src

    for j in range(nj):
        if k1[j] >= k0[j]:
            key = bv[j] + k0[j] / wv[j]
            nextk[j] = k0[j] + 1
            # sift up
            pos = hsize
            hsize += 1
            while pos > 0:
                parent = (pos - 1) >> 1
                if hkey[parent] <= key:
                    break
                hkey[pos] = hkey[parent]
                hsrc[pos] = hsrc[parent]
                pos = parent
            hkey[pos] = key
            hsrc[pos] = j

    cdef Py_ssize_t i = 0
    while hsize > 0:
        ov[i] = hkey[0]
        src = hsrc[0]
        i += 1
        if nextk[src] <= k1[src]:
            key = bv[src] + nextk[src] / wv[src]
            nextk[src] += 1
        else:
            hsize -= 1
            if hsize == 0:
                break
            key = hkey[hsize]
            src = hsrc[hsize]
        # sift down from root
        pos = 0
        while True:
            child = 2 * pos + 1
            if child >= hsize:
                break
            if child + 1 < hsize and hkey[child + 1] < hkey[child]:
                child += 1
            if hkey[child] >= key:
                break
            hkey[pos] = hkey[child]
            hsrc[pos] = hsrc[child]
            pos = child
        hkey[pos] = key
        hsrc[pos] = src
    return out

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; algorithmic twin of ``visitprob._kernels_py``.

Same pinned splitmix64 generator, same draw-to-double mapping, same
depth-first enumeration order and Neumaier compensation.  Output must be
bit-identical to the pure-Python fallback for equal inputs.
"""

from libc.math cimport fabs
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport calloc, free

__all__ = ["simulate_counts", "enumerate_visit_mass"]

cdef double _INV53 = 1.0 / 9007199254740992.0  # 2**-53


cdef inline double _next_unit(uint64_t *state) noexcept nogil:
    cdef uint64_t z
    state[0] = state[0] + <uint64_t>0x9E3779B97F4A7C15
    z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    z = z ^ (z >> 31)
    return <double>(z >> 11) * _INV53


def simulate_counts(int n, double p01, double p10, double p1,
                    long long trials, unsigned long long seed):
    """Histogram over k = 0..n of S1 visits in ``trials`` sampled trajectories."""
    cdef uint64_t state = seed
    cdef int64_t *counts
    cdef long long t
    cdef int step, s, visits, i
    cdef double u
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = <int64_t *>calloc(n + 1, sizeof(int64_t))
    if counts == NULL:
        raise MemoryError()
    try:
        with nogil:
            for t in range(trials):
                u = _next_unit(&state)
                s = 1 if u < p1 else 0
                visits = s
                for step in range(n - 1):
                    u = _next_unit(&state)
                    if s:
                        s = 0 if u < p10 else 1
                    else:
                        s = 1 if u < p01 else 0
                    visits += s
                counts[visits] += 1
        out = []
        for i in range(n + 1):
            out.append(counts[i])
        return out
    finally:
        free(counts)


cdef inline void _bucket_add(double *sums, double *comps, int k, double x) noexcept nogil:
    cdef double s = sums[k]
    cdef double t = s + x
    if fabs(s) >= fabs(x):
        comps[k] += (s - t) + x
    else:
        comps[k] += (x - t) + s
    sums[k] = t


cdef void _walk(int depth, int state, double prob, int visits, int n,
                double p00, double p01, double p10, double p11,
                double *sums, double *comps) noexcept nogil:
    if depth == n:
        _bucket_add(sums, comps, visits, prob)
        return
    if state:
        _walk(depth + 1, 0, prob * p10, visits, n, p00, p01, p10, p11, sums, comps)
        _walk(depth + 1, 1, prob * p11, visits + 1, n, p00, p01, p10, p11, sums, comps)
    else:
        _walk(depth + 1, 0, prob * p00, visits, n, p00, p01, p10, p11, sums, comps)
        _walk(depth + 1, 1, prob * p01, visits + 1, n, p00, p01, p10, p11, sums, comps)


def enumerate_visit_mass(int n, double p01, double p10, double p1):
    """Total probability of each S1-visit count over all 2**n trajectories."""
    cdef double p00 = 1.0 - p01
    cdef double p11 = 1.0 - p10
    cdef double p0 = 1.0 - p1
    cdef double *sums
    cdef double *comps
    cdef int k
    if n < 1:
        raise ValueError("n must be >= 1")
    sums = <double *>calloc(n + 1, sizeof(double))
    comps = <double *>calloc(n + 1, sizeof(double))
    if sums == NULL or comps == NULL:
        if sums != NULL:
            free(sums)
        if comps != NULL:
            free(comps)
        raise MemoryError()
    try:
        with nogil:
            _walk(1, 0, p0, 0, n, p00, p01, p10, p11, sums, comps)
            _walk(1, 1, p1, 1, n, p00, p01, p10, p11, sums, comps)
        out = []
        for k in range(n + 1):
            out.append(sums[k] + comps[k])
        return out
    finally:
        free(sums)
        free(comps)

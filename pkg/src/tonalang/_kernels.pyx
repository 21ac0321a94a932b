# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: Goertzel filter bank and the 64-bit LCG uniform stream.

Both functions are drop-in replacements for the ones in ``_fallback`` and
must return identical results (bit-identical for the LCG).
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin
from libc.stdint cimport uint64_t

cnp.import_array()


def goertzel_matrix(const double[:, ::1] frames, const double[:, ::1] omegas):
    """Normalized Goertzel power for every (frame, target) pair.

    ``omegas`` holds angular frequencies in radians/sample, one row per frame.
    """
    cdef Py_ssize_t n_frames = frames.shape[0]
    cdef Py_ssize_t n = frames.shape[1]
    cdef Py_ssize_t n_targets = omegas.shape[1]
    if omegas.shape[0] != n_frames:
        raise ValueError("omegas must have one row per frame")
    out = np.zeros((n_frames, n_targets), dtype=np.float64)
    cdef double[:, ::1] power = out
    # targets innermost: independent recurrences pipeline and vectorize
    cdef double[::1] coeff = np.empty(n_targets)
    cdef double[::1] s1 = np.empty(n_targets)
    cdef double[::1] s2 = np.empty(n_targets)
    cdef Py_ssize_t f, t, k
    cdef double w, x, s0, re, im, norm
    if n == 0 or n_targets == 0:
        return out
    norm = <double>n * <double>n
    with nogil:
        for f in range(n_frames):
            for t in range(n_targets):
                coeff[t] = 2.0 * cos(omegas[f, t])
                s1[t] = 0.0
                s2[t] = 0.0
            for k in range(n):
                x = frames[f, k]
                for t in range(n_targets):
                    s0 = x + coeff[t] * s1[t] - s2[t]
                    s2[t] = s1[t]
                    s1[t] = s0
            for t in range(n_targets):
                w = omegas[f, t]
                re = s1[t] - cos(w) * s2[t]
                im = sin(w) * s2[t]
                power[f, t] = (re * re + im * im) / norm
    return out

def lcg_uniforms(unsigned long long seed, Py_ssize_t count):
    """``count`` uniforms in (0, 1] from x <- a*x + c (mod 2**64), top 53 bits."""
    out = np.empty(count, dtype=np.float64)
    cdef double[::1] u = out
    cdef uint64_t x = seed
    cdef uint64_t a = 6364136223846793005ULL
    cdef uint64_t c = 1442695040888963407ULL
    cdef double scale = 1.0 / 9007199254740992.0
    cdef Py_ssize_t i
    with nogil:
        for i in range(count):
            x = a * x + c
            u[i] = (<double>((x >> 11) + 1)) * scale
    return out

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled classical RK4 for ẋ = Mx + f(t) with tabulated forcing."""

import numpy as np
cimport numpy as cnp
from libc.math cimport isfinite

cnp.import_array()


def rk4_lti(const double[:, ::1] M, const double[:, ::1] f_nodes,
            const double[:, ::1] f_mid, const double[::1] times, const double[::1] x0):
    """Integrate on the ``times`` grid.

    ``f_nodes[k]`` is the forcing at ``times[k]`` and ``f_mid[k]`` at the
    midpoint of step k. Returns ``(states, bad_step)`` where ``bad_step`` is
    the first step index producing a non-finite state, or -1.
    """
    cdef Py_ssize_t n = M.shape[0]
    cdef Py_ssize_t nt = times.shape[0]
    cdef Py_ssize_t k, i, j
    cdef double h, acc
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((nt, n), dtype=np.float64)
    cdef double[:, ::1] X = out
    cdef double[::1] x = np.array(x0, dtype=np.float64)
    cdef double[::1] xs = np.empty(n, dtype=np.float64)
    cdef double[::1] k1 = np.empty(n, dtype=np.float64)
    cdef double[::1] k2 = np.empty(n, dtype=np.float64)
    cdef double[::1] k3 = np.empty(n, dtype=np.float64)
    cdef double[::1] k4 = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t bad = -1

    for i in range(n):
        X[0, i] = x[i]
    with nogil:
        for k in range(nt - 1):
            h = times[k + 1] - times[k]
            for i in range(n):
                acc = f_nodes[k, i]
                for j in range(n):
                    acc = acc + M[i, j] * x[j]
                k1[i] = acc
            for i in range(n):
                xs[i] = x[i] + 0.5 * h * k1[i]
            for i in range(n):
                acc = f_mid[k, i]
                for j in range(n):
                    acc = acc + M[i, j] * xs[j]
                k2[i] = acc
            for i in range(n):
                xs[i] = x[i] + 0.5 * h * k2[i]
            for i in range(n):
                acc = f_mid[k, i]
                for j in range(n):
                    acc = acc + M[i, j] * xs[j]
                k3[i] = acc
            for i in range(n):
                xs[i] = x[i] + h * k3[i]
            for i in range(n):
                acc = f_nodes[k + 1, i]
                for j in range(n):
                    acc = acc + M[i, j] * xs[j]
                k4[i] = acc
            for i in range(n):
                x[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                X[k + 1, i] = x[i]
                if not isfinite(x[i]):
                    bad = k + 1
            if bad >= 0:
                break
    return out, bad

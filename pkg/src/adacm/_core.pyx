# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-pixel kernels: trilinear LUT lookup and color-MLP evaluation.

These are the hot inner loops; a numpy fallback with identical semantics
lives in _kernels_np.py.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor


def lut_apply_colors(const double[:, ::1] colors, const double[:, ::1] table, Py_ssize_t size):
    cdef Py_ssize_t n = colors.shape[0]
    cdef Py_ssize_t m = size
    cdef cnp.ndarray out_arr = np.empty((n, 3), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, r0, g0, b0
    cdef double r, g, b, vr, vg, vb, fr, fg, fb
    cdef double w000, w100, w010, w110, w001, w101, w011, w111
    cdef Py_ssize_t i000, i100, i010, i110, i001, i101, i011, i111
    cdef double scale = <double>(m - 1)
    cdef double val
    cdef int c

    with nogil:
        for i in range(n):
            r = colors[i, 0]
            g = colors[i, 1]
            b = colors[i, 2]
            if r < 0.0: r = 0.0
            elif r > 1.0: r = 1.0
            if g < 0.0: g = 0.0
            elif g > 1.0: g = 1.0
            if b < 0.0: b = 0.0
            elif b > 1.0: b = 1.0
            vr = r * scale
            vg = g * scale
            vb = b * scale
            r0 = <Py_ssize_t>floor(vr)
            g0 = <Py_ssize_t>floor(vg)
            b0 = <Py_ssize_t>floor(vb)
            if r0 > m - 2: r0 = m - 2
            if g0 > m - 2: g0 = m - 2
            if b0 > m - 2: b0 = m - 2
            fr = vr - <double>r0
            fg = vg - <double>g0
            fb = vb - <double>b0

            i000 = r0 + m * g0 + m * m * b0
            i100 = i000 + 1
            i010 = i000 + m
            i110 = i010 + 1
            i001 = i000 + m * m
            i101 = i001 + 1
            i011 = i001 + m
            i111 = i011 + 1

            w000 = (1.0 - fr) * (1.0 - fg) * (1.0 - fb)
            w100 = fr * (1.0 - fg) * (1.0 - fb)
            w010 = (1.0 - fr) * fg * (1.0 - fb)
            w110 = fr * fg * (1.0 - fb)
            w001 = (1.0 - fr) * (1.0 - fg) * fb
            w101 = fr * (1.0 - fg) * fb
            w011 = (1.0 - fr) * fg * fb
            w111 = fr * fg * fb

            for c in range(3):
                val = (w000 * table[i000, c] + w100 * table[i100, c]
                       + w010 * table[i010, c] + w110 * table[i110, c]
                       + w001 * table[i001, c] + w101 * table[i101, c]
                       + w011 * table[i011, c] + w111 * table[i111, c])
                if val < 0.0: val = 0.0
                elif val > 1.0: val = 1.0
                out[i, c] = val
    return out_arr


def mlp_apply_colors(const double[:, ::1] colors,
                     const double[:, ::1] w1, const double[::1] b1,
                     const double[:, ::1] w2, const double[::1] b2,
                     const double[:, ::1] w3, const double[::1] b3):
    cdef Py_ssize_t n = colors.shape[0]
    cdef Py_ssize_t nh = w1.shape[0]
    cdef cnp.ndarray out_arr = np.empty((n, 3), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef cnp.ndarray scratch = np.empty((2, nh), dtype=np.float64)
    cdef double[::1] h1 = scratch[0]
    cdef double[::1] h2 = scratch[1]
    cdef Py_ssize_t i, j, k
    cdef double acc
    cdef int c

    with nogil:
        for i in range(n):
            for j in range(nh):
                acc = b1[j] + (w1[j, 0] * colors[i, 0]
                               + w1[j, 1] * colors[i, 1]
                               + w1[j, 2] * colors[i, 2])
                h1[j] = acc if acc > 0.0 else 0.0
            for j in range(nh):
                acc = b2[j]
                for k in range(nh):
                    acc += w2[j, k] * h1[k]
                h2[j] = acc if acc > 0.0 else 0.0
            for c in range(3):
                acc = b3[c]
                for k in range(nh):
                    acc += w3[c, k] * h2[k]
                if acc < 0.0: acc = 0.0
                elif acc > 1.0: acc = 1.0
                out[i, c] = acc
    return out_arr

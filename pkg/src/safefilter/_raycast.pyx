# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled ray casting kernel for circles and thick segments (capsules)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, hypot, INFINITY

cnp.import_array()


cdef inline double _circle_hit(double ox, double oy, double dx, double dy,
                               double cx, double cy, double r) nogil:
    cdef double px = cx - ox
    cdef double py = cy - oy
    cdef double b = dx * px + dy * py
    cdef double c = px * px + py * py - r * r
    cdef double disc = b * b - c
    cdef double sq, t
    if disc < 0:
        return INFINITY
    sq = sqrt(disc)
    t = b - sq
    if t > 1e-12:
        return t
    t = b + sq
    if t > 1e-12:
        return t
    return INFINITY


cdef inline double _segment_hit(double ox, double oy, double dx, double dy,
                                double ax, double ay, double bx, double by) nogil:
    cdef double ex = bx - ax
    cdef double ey = by - ay
    cdef double denom = dy * ex - dx * ey
    cdef double wx, wy, t, s
    if denom > -1e-14 and denom < 1e-14:
        return INFINITY
    wx = ax - ox
    wy = ay - oy
    t = (wy * ex - wx * ey) / denom
    s = (dx * wy - dy * wx) / denom
    if t > 1e-12 and s >= 0.0 and s <= 1.0:
        return t
    return INFINITY


def cast_rays(origin, angles, circles, segments, double max_range):
    """Smallest positive hit distance per ray, capped at max_range.

    Mirrors the pure-python kernel: circles are rows (cx, cy, r), segments
    are rows (ax, ay, bx, by, halfwidth).
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ang = np.ascontiguousarray(angles, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] cir = np.ascontiguousarray(
        np.asarray(circles, dtype=np.float64).reshape(-1, 3))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] seg = np.ascontiguousarray(
        np.asarray(segments, dtype=np.float64).reshape(-1, 5))
    cdef double ox = origin[0]
    cdef double oy = origin[1]
    cdef Py_ssize_t k = ang.shape[0]
    cdef Py_ssize_t m = cir.shape[0]
    cdef Py_ssize_t p = seg.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(k, dtype=np.float64)

    cdef Py_ssize_t i, j
    cdef double dx, dy, best, t
    cdef double ax, ay, bx, by, hw, ex, ey, norm, nx, ny

    with nogil:
        for i in range(k):
            dx = cos(ang[i])
            dy = sin(ang[i])
            best = INFINITY
            for j in range(m):
                t = _circle_hit(ox, oy, dx, dy, cir[j, 0], cir[j, 1], cir[j, 2])
                if t < best:
                    best = t
            for j in range(p):
                ax = seg[j, 0]; ay = seg[j, 1]
                bx = seg[j, 2]; by = seg[j, 3]
                hw = seg[j, 4]
                if hw == 0.0:
                    t = _segment_hit(ox, oy, dx, dy, ax, ay, bx, by)
                    if t < best:
                        best = t
                else:
                    ex = bx - ax
                    ey = by - ay
                    norm = hypot(ex, ey)
                    nx = -ey / norm * hw
                    ny = ex / norm * hw
                    t = _segment_hit(ox, oy, dx, dy, ax + nx, ay + ny, bx + nx, by + ny)
                    if t < best:
                        best = t
                    t = _segment_hit(ox, oy, dx, dy, ax - nx, ay - ny, bx - nx, by - ny)
                    if t < best:
                        best = t
                    t = _circle_hit(ox, oy, dx, dy, ax, ay, hw)
                    if t < best:
                        best = t
                    t = _circle_hit(ox, oy, dx, dy, bx, by, hw)
                    if t < best:
                        best = t
            if best > max_range:
                best = max_range
            out[i] = best
    return out

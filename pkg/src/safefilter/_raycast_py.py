"""Pure-numpy ray casting kernel, fallback for the compiled extension.

Rays are cast against circles and thick segments (capsules). A capsule of
half-width w is the union of two offset segments and two endpoint circles
of radius w; with w = 0 it degenerates to the bare segment.
"""

from __future__ import annotations

import numpy as np


def _ray_circles(ox, oy, dx, dy, circles, t_best):
    # circles: (m, 3) of cx, cy, r
    if circles.shape[0] == 0:
        return t_best
    cx = circles[:, 0][None, :] - ox  # (k, m) after broadcast below
    cy = circles[:, 1][None, :] - oy
    r = circles[:, 2][None, :]
    b = dx[:, None] * cx + dy[:, None] * cy
    c = cx * cx + cy * cy - r * r
    disc = b * b - c
    ok = disc >= 0
    sq = np.sqrt(np.where(ok, disc, 0.0))
    t1 = b - sq
    t2 = b + sq
    t = np.where(t1 > 1e-12, t1, np.where(t2 > 1e-12, t2, np.inf))
    t = np.where(ok, t, np.inf)
    return np.minimum(t_best, t.min(axis=1))


def _ray_bare_segments(ox, oy, dx, dy, segs, t_best):
    # segs: (p, 4) of ax, ay, bx, by
    if segs.shape[0] == 0:
        return t_best
    ax = segs[:, 0][None, :]
    ay = segs[:, 1][None, :]
    ex = (segs[:, 2] - segs[:, 0])[None, :]
    ey = (segs[:, 3] - segs[:, 1])[None, :]
    # solve o + t d = a + s e
    denom = dx[:, None] * (-ey) - dy[:, None] * (-ex)
    wx = ax - ox
    wy = ay - oy
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (wx * (-ey) - wy * (-ex)) / denom
        s = (dx[:, None] * wy - dy[:, None] * wx) / denom
    ok = (np.abs(denom) > 1e-14) & (t > 1e-12) & (s >= 0.0) & (s <= 1.0)
    t = np.where(ok, t, np.inf)
    return np.minimum(t_best, t.min(axis=1))


def cast_rays(origin, angles, circles, segments, max_range):
    """Smallest positive hit distance per ray, capped at max_range.

    origin: (2,); angles: (k,) absolute ray angles;
    circles: (m, 3) rows cx, cy, r; segments: (p, 5) rows ax, ay, bx, by, halfwidth.
    Returns (k,) float64 ranges; misses report exactly max_range.
    """
    angles = np.asarray(angles, dtype=np.float64)
    circles = np.asarray(circles, dtype=np.float64).reshape(-1, 3)
    segments = np.asarray(segments, dtype=np.float64).reshape(-1, 5)
    ox, oy = float(origin[0]), float(origin[1])
    dx = np.cos(angles)
    dy = np.sin(angles)
    t_best = np.full(angles.shape, np.inf)

    t_best = _ray_circles(ox, oy, dx, dy, circles, t_best)

    if segments.shape[0]:
        w = segments[:, 4]
        thick = w > 0
        bare = segments[~thick, :4]
        t_best = _ray_bare_segments(ox, oy, dx, dy, bare, t_best)
        for seg in segments[thick]:
            ax, ay, bx, by, hw = seg
            ex, ey = bx - ax, by - ay
            norm = np.hypot(ex, ey)
            nx, ny = -ey / norm * hw, ex / norm * hw
            offs = np.array(
                [
                    [ax + nx, ay + ny, bx + nx, by + ny],
                    [ax - nx, ay - ny, bx - nx, by - ny],
                ]
            )
            caps = np.array([[ax, ay, hw], [bx, by, hw]])
            t_best = _ray_bare_segments(ox, oy, dx, dy, offs, t_best)
            t_best = _ray_circles(ox, oy, dx, dy, caps, t_best)

    return np.minimum(t_best, max_range)

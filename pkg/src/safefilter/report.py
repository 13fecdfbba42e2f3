"""Trajectory artifacts: lossless CSV logs and native SVG plots."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .core import Circle, Scene, Segment
from .sim import Terminal, TrajectoryLog

CSV_COLUMNS = (
    "t", "px", "py", "vx", "vy",
    "vdes_x", "vdes_y", "vstar_x", "vstar_y",
    "h", "clearance", "intervened",
)


def _fmt(x: float) -> str:
    # 17 significant digits round-trips IEEE doubles exactly.
    return format(float(x), ".17g")


def write_csv(log: TrajectoryLog, path: Union[str, Path]) -> Path:
    """Write a trajectory log to CSV using the fixed 12-column contract."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(CSV_COLUMNS)
        for i in range(len(log)):
            w.writerow(
                [_fmt(log.t[i])]
                + [_fmt(v) for v in log.position[i]]
                + [_fmt(v) for v in log.velocity[i]]
                + [_fmt(v) for v in log.v_des[i]]
                + [_fmt(v) for v in log.v_star[i]]
                + [_fmt(log.h[i]), _fmt(log.clearance[i])]
                + [int(log.intervened[i])]
            )
        # terminal recorded as a comment-style trailer row for round-tripping
        w.writerow([f"#terminal:{log.terminal.kind}:{_fmt(log.terminal.t)}:{log.terminal.detail}"])
    return path


def read_csv(path: Union[str, Path]) -> TrajectoryLog:
    """Reconstruct a TrajectoryLog from a CSV emitted by write_csv."""
    rows: List[List[str]] = []
    terminal = Terminal("horizon", 0.0)
    with open(path, newline="") as f:
        r = csv.reader(f)
        header = next(r)
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {header!r}")
        for row in r:
            if row and row[0].startswith("#terminal:"):
                _, kind, t, detail = row[0].split(":", 3)
                terminal = Terminal(kind, float(t), detail)
            elif row:
                rows.append(row)
    a = np.asarray([[float(v) for v in row] for row in rows])
    a = a.reshape(-1, len(CSV_COLUMNS))
    return TrajectoryLog(
        t=a[:, 0],
        position=a[:, 1:3],
        velocity=a[:, 3:5],
        v_des=a[:, 5:7],
        v_star=a[:, 7:9],
        h=a[:, 9],
        clearance=a[:, 10],
        intervened=a[:, 11].astype(bool),
        terminal=terminal,
    )


# --- SVG ------------------------------------------------------------------

_PALETTE = ("#1965b0", "#dc050c", "#4eb265", "#f1932d", "#882e72", "#7bafde")


class _Mapper:
    """World (x up-positive y) to SVG pixel coordinates (y down-positive)."""

    def __init__(self, bounds: Tuple[float, float, float, float], width: float, height: float):
        xmin, ymin, xmax, ymax = bounds
        self.scale = min(width / (xmax - xmin), height / (ymax - ymin))
        self.xmin, self.ymax = xmin, ymax
        self.width = (xmax - xmin) * self.scale
        self.height = (ymax - ymin) * self.scale

    def pt(self, x: float, y: float) -> Tuple[float, float]:
        return ((x - self.xmin) * self.scale, (self.ymax - y) * self.scale)

    def fmt(self, x: float, y: float) -> str:
        px, py = self.pt(x, y)
        return f"{px:.2f},{py:.2f}"


def _polyline(m: _Mapper, points: np.ndarray, color: str, width: float = 1.6,
              dash: str = "") -> str:
    if len(points) == 0:
        return ""
    d = " ".join(m.fmt(p[0], p[1]) for p in points)
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<polyline points="{d}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"{dash_attr}/>')


def _obstacle_svg(m: _Mapper, obs) -> str:
    if isinstance(obs, Circle):
        cx, cy = m.pt(obs.center[0], obs.center[1])
        r = max(obs.radius * m.scale, 2.0)
        return f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.2f}" fill="#55555588"/>'
    if isinstance(obs, Segment):
        ax, ay = m.pt(obs.a[0], obs.a[1])
        bx, by = m.pt(obs.b[0], obs.b[1])
        w = max(obs.thickness * m.scale, 2.0)
        return (f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
                f'stroke="#55555588" stroke-width="{w:.2f}" stroke-linecap="round"/>')
    return ""


def render_svg(
    scene: Scene,
    logs: Sequence[TrajectoryLog],
    labels: Optional[Sequence[str]] = None,
    title: str = "",
    size: Tuple[int, int] = (640, 480),
) -> str:
    """Render trajectories over the scene plus a speed-vs-time subplot.

    Multiple logs overlay in distinct colors (parameter sweeps, comparisons).
    """
    labels = list(labels or [f"run {i}" for i in range(len(logs))])
    arena_w, arena_h = size[0], size[1] * 0.68
    m = _Mapper(scene.bounds, arena_w - 20, arena_h - 20)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size[0]}" height="{size[1]}" '
        f'viewBox="0 0 {size[0]} {size[1]}" font-family="sans-serif" font-size="11">',
        f'<rect width="{size[0]}" height="{size[1]}" fill="white"/>',
        '<g transform="translate(10,18)">',
        f'<rect x="0" y="0" width="{m.width:.2f}" height="{m.height:.2f}" '
        'fill="#fafafa" stroke="#cccccc"/>',
    ]
    if title:
        parts.append(f'<text x="0" y="-6" font-size="13">{title}</text>')
    for obs in scene.obstacles:
        parts.append(_obstacle_svg(m, obs))
    gx, gy = m.pt(scene.goal[0], scene.goal[1])
    parts.append(
        f'<path d="M {gx:.2f} {gy - 6:.2f} L {gx + 5.7:.2f} {gy + 4.2:.2f} '
        f'L {gx - 5.7:.2f} {gy + 4.2:.2f} Z" fill="#2ca02c"/>'
    )
    for i, log in enumerate(logs):
        color = _PALETTE[i % len(_PALETTE)]
        parts.append(_polyline(m, log.position, color))
        if len(log.position):
            sx, sy = m.pt(log.position[0, 0], log.position[0, 1])
            parts.append(f'<circle cx="{sx:.2f}" cy="{sy:.2f}" r="3" fill="{color}"/>')
        parts.append(
            f'<text x="{m.width + 4:.2f}" y="{14 * i + 10}" fill="{color}">'
            f"{labels[i]} [{log.terminal.kind}]</text>"
        )
    parts.append("</g>")

    # speed-vs-time subplot
    sub_y = arena_h + 24
    sub_h = size[1] - sub_y - 16
    sub_w = size[0] - 50
    t_max = max((float(log.t[-1]) for log in logs if len(log)), default=1.0) or 1.0
    v_max = max(
        (float(np.max(np.linalg.norm(log.velocity, axis=1))) for log in logs if len(log)),
        default=1.0,
    ) or 1.0
    parts.append(f'<g transform="translate(40,{sub_y:.2f})">')
    parts.append(f'<rect x="0" y="0" width="{sub_w}" height="{sub_h:.2f}" '
                 'fill="#fafafa" stroke="#cccccc"/>')
    parts.append(f'<text x="-30" y="10" font-size="10">{v_max:.1f}</text>')
    parts.append(f'<text x="{sub_w - 30}" y="{sub_h + 12:.2f}" font-size="10">{t_max:.0f} s</text>')
    parts.append(f'<text x="0" y="{sub_h + 12:.2f}" font-size="10">speed (m/s)</text>')
    for i, log in enumerate(logs):
        if not len(log):
            continue
        speed = np.linalg.norm(log.velocity, axis=1)
        pts = " ".join(
            f"{log.t[j] / t_max * sub_w:.2f},{sub_h - speed[j] / v_max * sub_h:.2f}"
            for j in range(len(log))
        )
        parts.append(f'<polyline points="{pts}" fill="none" '
                     f'stroke="{_PALETTE[i % len(_PALETTE)]}" stroke-width="1.2"/>')
    parts.append("</g></svg>")
    return "\n".join(p for p in parts if p)


def write_svg(
    scene: Scene,
    logs: Sequence[TrajectoryLog],
    path: Union[str, Path],
    labels: Optional[Sequence[str]] = None,
    title: str = "",
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_svg(scene, logs, labels=labels, title=title))
    return path

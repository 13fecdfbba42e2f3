"""Benchmark the compiled ray-casting kernel against the numpy fallback.

Run: python benchmarks/bench_raycast.py [--beams N] [--repeats K]
"""

from __future__ import annotations

import argparse
import importlib
import time

import numpy as np

from safefilter import sensing
from safefilter.core import Circle, Scene, Segment


def make_scene() -> Scene:
    rng = np.random.default_rng(7)
    obstacles = [
        Circle(center=rng.uniform(-4, 4, 2), radius=float(rng.uniform(0.2, 0.6)))
        for _ in range(12)
    ] + [
        Segment(a=rng.uniform(-4, 4, 2), b=rng.uniform(-4, 4, 2),
                thickness=float(rng.uniform(0.05, 0.3)))
        for _ in range(6)
    ]
    # keep the origin clear of every obstacle
    obstacles = [o for o in obstacles if o.distance(np.zeros(2)) > 0.5]
    return Scene(goal=(9.0, 9.0), obstacles=tuple(obstacles), bounds=(-5, -5, 10, 10))


def bench(kernel, origin, angles, circles, segments, max_range, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        kernel.cast_rays(origin, angles, circles, segments, max_range)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--beams", type=int, default=1080)
    ap.add_argument("--repeats", type=int, default=200)
    args = ap.parse_args()

    scene = make_scene()
    circles, segments = sensing.scene_arrays(scene)
    origin = np.zeros(2)
    angles = np.linspace(-0.75 * np.pi, 0.75 * np.pi, args.beams)

    numpy_kernel = importlib.import_module("safefilter._raycast_py")
    kernels = [("numpy", numpy_kernel)]
    try:
        kernels.insert(0, ("cython", importlib.import_module("safefilter._raycast")))
    except ImportError:
        print("compiled kernel unavailable; benchmarking fallback only")

    ranges = {}
    print(f"{args.beams} beams, {len(scene.obstacles)} obstacles, "
          f"best of {args.repeats} (active kernel: {sensing.KERNEL})")
    times = {}
    for name, mod in kernels:
        dt = bench(mod, origin, angles, circles, segments, 10.0, args.repeats)
        ranges[name] = mod.cast_rays(origin, angles, circles, segments, 10.0)
        times[name] = dt
        print(f"  {name:>6}: {dt * 1e6:8.1f} us/scan  ({args.beams / dt / 1e6:6.2f} Mrays/s)")
    if len(kernels) == 2:
        diff = float(np.max(np.abs(ranges["cython"] - ranges["numpy"])))
        print(f"  speedup: {times['numpy'] / times['cython']:.1f}x; "
              f"max |range difference| = {diff:.2e} m")


if __name__ == "__main__":
    main()

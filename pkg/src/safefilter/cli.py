"""Command-line front end: run, sweep, compare, list scenarios, teleop."""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import report
from .errors import SafeFilterError
from .scenario_io import (
    CFG_FIELDS,
    RUN_FIELDS,
    ScenarioParseError,
    bundled_scenario_names,
    bundled_scenario_path,
    load_scenario,
)
from .sim import CONTROLLERS, Metrics, ScenarioSpec, TrajectoryLog, compute_metrics, run

EXIT_OK = 0
EXIT_COLLISION = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class RunReport:
    name: str
    spec_hash: str
    metrics: Metrics
    terminal: str
    csv_path: Optional[Path] = None
    svg_path: Optional[Path] = None


def _spec_hash(spec: ScenarioSpec) -> str:
    return hashlib.sha256(repr(spec).encode()).hexdigest()[:12]


def _parse_sets(pairs: Sequence[str]) -> Dict[str, float]:
    out: Dict[str, float] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise ScenarioParseError(f"--set expects key=value, got {pair!r}")
        try:
            out[key] = float(value)
        except ValueError as e:
            raise ScenarioParseError(f"--set {key}: {e}") from e
    return out


def _resolve_path(path: str) -> Path:
    p = Path(path)
    if p.is_file():
        return p
    if not p.suffix and "/" not in path:
        try:
            return bundled_scenario_path(path)
        except ScenarioParseError:
            pass
    raise ScenarioParseError(f"scenario file not found: {path}")


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("SAFEFILTER_OUT") or "out"
    p = Path(out)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _execute(spec: ScenarioSpec, out: Path, tag: str = "") -> Tuple[RunReport, TrajectoryLog]:
    log = run(spec)
    metrics = compute_metrics(log, spec)
    stem = f"{spec.name}{('-' + tag) if tag else ''}"
    csv_path = report.write_csv(log, out / f"{stem}.csv")
    svg_path = report.write_svg(
        spec.scene, [log], out / f"{stem}.svg",
        labels=[spec.controller], title=stem,
    )
    rep = RunReport(
        name=spec.name, spec_hash=_spec_hash(spec), metrics=metrics,
        terminal=log.terminal.kind, csv_path=csv_path, svg_path=svg_path,
    )
    return rep, log


def _print_report(rep: RunReport) -> None:
    print(f"{rep.name} [{rep.spec_hash}] terminal={rep.terminal} {rep.metrics.summary()}")


def cmd_run(args) -> int:
    spec = load_scenario(
        _resolve_path(args.scenario),
        controller=args.controller,
        overrides=_parse_sets(args.set),
    )
    if args.dt:
        spec = replace(spec, dt=args.dt)
    rep, _ = _execute(spec, _out_dir(args))
    _print_report(rep)
    return EXIT_COLLISION if rep.terminal == "collision" else EXIT_OK


def cmd_sweep(args) -> int:
    if args.param not in CFG_FIELDS + RUN_FIELDS:
        raise ScenarioParseError(f"unknown sweep parameter {args.param!r}")
    if not args.values:
        raise ScenarioParseError("sweep needs at least one value")
    path = _resolve_path(args.scenario)
    base_sets = _parse_sets(args.set)
    specs = []
    for v in args.values:
        overrides = dict(base_sets)
        overrides[args.param] = v
        spec = load_scenario(path, controller=args.controller, overrides=overrides)
        if args.dt:
            spec = replace(spec, dt=args.dt)
        specs.append(spec)

    out = _out_dir(args)
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(run, specs))
    logs = list(results)
    reports = []
    collided = False
    labels = [f"{args.param}={v:g}" for v in args.values]
    lines = ["name,param,value,terminal,reached,min_clearance,path_length,oscillation_index"]
    for spec, log, label, v in zip(specs, logs, labels, args.values):
        m = compute_metrics(log, spec)
        rep = RunReport(
            name=f"{spec.name}-{label}", spec_hash=_spec_hash(spec),
            metrics=m, terminal=log.terminal.kind,
        )
        reports.append(rep)
        collided |= log.terminal.kind == "collision"
        _print_report(rep)
        lines.append(
            f"{spec.name},{args.param},{v:g},{log.terminal.kind},{int(m.reached)},"
            f"{m.min_clearance:.6f},{m.path_length:.6f},{m.oscillation_index:.6f}"
        )
    stem = f"{specs[0].name}-sweep-{args.param}"
    (out / f"{stem}.csv").write_text("\n".join(lines) + "\n")
    report.write_svg(specs[0].scene, logs, out / f"{stem}.svg", labels=labels, title=stem)
    return EXIT_COLLISION if collided else EXIT_OK


def cmd_compare(args) -> int:
    path = _resolve_path(args.scenario)
    base = load_scenario(path, overrides=_parse_sets(args.set))
    # scan-equipped scenes get the scan-driven potential-field variant
    apf_kind = "apf-gaussian" if (args.scan or base.lidar is not None) else "apf"
    controllers = (apf_kind, "cbf")
    specs = [replace(base, controller=c) for c in controllers]
    out = _out_dir(args)
    logs = [run(s) for s in specs]
    metrics = [compute_metrics(log, s) for log, s in zip(logs, specs)]
    stem = f"{specs[0].name}-compare"
    report.write_svg(specs[0].scene, logs, out / f"{stem}.svg", labels=list(controllers),
                     title=stem)
    rows = [
        ("terminal", *(log.terminal.kind for log in logs)),
        ("reached", *(m.reached for m in metrics)),
        ("min_clearance", *(f"{m.min_clearance:.3f}" for m in metrics)),
        ("path_length", *(f"{m.path_length:.2f}" for m in metrics)),
        ("oscillation_index", *(f"{m.oscillation_index:.3f}" for m in metrics)),
        ("reversal_count", *(m.reversal_count for m in metrics)),
    ]
    name_w = max(len(r[0]) for r in rows)
    print(f"{'metric':<{name_w}}  {controllers[0]:>14}  {controllers[1]:>14}")
    for r in rows:
        print(f"{r[0]:<{name_w}}  {str(r[1]):>14}  {str(r[2]):>14}")
    collided = any(log.terminal.kind == "collision" for log in logs)
    return EXIT_COLLISION if collided else EXIT_OK


def cmd_scenarios(_args) -> int:
    for name in bundled_scenario_names():
        print(name)
    return EXIT_OK


def cmd_teleop(args) -> int:
    from . import teleop

    scene = _resolve_path(args.scenario) if args.scenario else bundled_scenario_path(
        "teleop_course"
    )
    port = args.port or int(os.environ.get("SAFEFILTER_TELEOP_PORT", "8090"))
    teleop.serve(scene, port=port, tick_hz=args.tick_hz)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="safefilter",
        description="Obstacle-avoidance safety filtering: run scenarios, sweep "
                    "parameters, compare controllers, or serve the teleop bridge.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, scenario_required=True):
        p.add_argument("scenario", nargs=None if scenario_required else "?",
                       help="scenario file path or bundled scenario name")
        p.add_argument("--out", help="artifact directory (env SAFEFILTER_OUT, default ./out)")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a controller/run parameter (repeatable)")
        p.add_argument("--controller", choices=CONTROLLERS)
        p.add_argument("--dt", type=float)
        p.add_argument("--seed", type=int, default=0,
                       help="reserved; all bundled runs are deterministic")

    p_run = sub.add_parser("run", help="run one scenario, emit CSV and SVG")
    add_common(p_run)
    p_run.set_defaults(fn=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a scenario across parameter values")
    add_common(p_sweep)
    p_sweep.add_argument("--param", required=True)
    p_sweep.add_argument("--values", type=float, nargs="+", required=True)
    p_sweep.set_defaults(fn=cmd_sweep)

    p_cmp = sub.add_parser("compare", help="run potential-field and barrier controllers side by side")
    add_common(p_cmp)
    p_cmp.add_argument("--scan", action="store_true",
                       help="force the scan-based potential-field variant")
    p_cmp.set_defaults(fn=cmd_compare)

    p_ls = sub.add_parser("scenarios", help="list bundled scenarios")
    p_ls.set_defaults(fn=cmd_scenarios)

    p_tel = sub.add_parser("teleop", help="serve the websocket teleoperation bridge")
    p_tel.add_argument("scenario", nargs="?", help="scene file (default: bundled course)")
    p_tel.add_argument("--port", type=int)
    p_tel.add_argument("--tick-hz", type=float, default=50.0)
    p_tel.set_defaults(fn=cmd_teleop)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if e.code not in (0,) else 0
    try:
        return args.fn(args)
    except (ScenarioParseError, SafeFilterError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

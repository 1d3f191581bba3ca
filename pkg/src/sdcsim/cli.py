"""Command-line interface.

Verbs: run, sweep, serve, presets. Exit codes: 0 success, 1 validation error,
2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .forecast import RoadmapRangeError
from .scenario import (
    Scenario,
    ScenarioError,
    emit,
    emit_sweep_summary,
    load_preset,
    load_scenario,
    preset_names,
    preset_text,
    run,
    sweep,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


def _load(ref: str) -> Scenario:
    """A scenario reference is a JSON file path or a preset name."""
    if Path(ref).is_file():
        return load_scenario(ref)
    if ref in preset_names():
        return load_preset(ref)
    raise ScenarioError([(ref, "no such scenario file or preset")])


def _cmd_run(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    report = run(scenario)
    paths = emit(report, fmt=args.format, out_dir=args.out)
    for p in paths:
        print(p)
    print(f"content_hash {report.content_hash}")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    scenario = _load(args.scenario)
    try:
        values = [float(v) for v in args.values.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ScenarioError([("--values", f"not a numeric list: {exc}")]) from exc
    if not values:
        raise ScenarioError([("--values", "must list at least one value")])
    reports, summary = sweep(scenario, args.axis, values)
    out = Path(args.out)
    for value, report in zip(values, reports):
        tag = f"{args.axis.replace('.', '_')}_{value:g}"
        paths = emit(report, fmt=args.format, out_dir=out / tag)
        for p in paths:
            print(p)
    print(emit_sweep_summary(summary, out))
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def _cmd_presets(args: argparse.Namespace) -> int:
    if args.action == "list":
        for name in preset_names():
            print(name)
        return EXIT_OK
    if not args.name:
        raise ScenarioError([("presets show", "requires a preset name")])
    print(preset_text(args.name), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdcsim",
        description="Deterministic space-data-center constellation simulator "
        "and design forecaster.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario and write its report")
    p_run.add_argument("scenario", help="scenario JSON path or preset name")
    p_run.add_argument("--out", default=".", help="output directory")
    p_run.add_argument("--format", choices=("json", "csv"), default="json")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a scenario across an axis of values")
    p_sweep.add_argument("scenario", help="scenario JSON path or preset name")
    p_sweep.add_argument("--axis", required=True, help="parameter path, e.g. design.year")
    p_sweep.add_argument("--values", required=True, help="comma-separated numbers")
    p_sweep.add_argument("--out", default=".", help="output directory")
    p_sweep.add_argument("--format", choices=("json", "csv"), default="json")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_serve = sub.add_parser("serve", help="serve the JSON API (and UI if built)")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument(
        "--ui-dir", default=None,
        help="directory with the built explorer UI to serve at /",
    )
    p_serve.set_defaults(func=_cmd_serve)

    p_presets = sub.add_parser("presets", help="list or show shipped presets")
    p_presets.add_argument("action", choices=("list", "show"))
    p_presets.add_argument("name", nargs="?", default=None)
    p_presets.set_defaults(func=_cmd_presets)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, RoadmapRangeError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except json.JSONDecodeError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``bellbath run|sweep|reproduce|presets``."""

import argparse
import json
import sys

from .config import ConfigError, load_config
from .presets import DESCRIPTIONS, PRESETS, get_preset
from .reproduce import VARIANT_CHOICES, reproduce_quoted
from .scenario import run_scenario

EXIT_GATE = 1
EXIT_CONFIG = 2


def _print_run(result):
    for p in result.points:
        status = "ok" if p.gates_ok else "GATE FAILED: " + "; ".join(p.problems)
        print(f"{p.path}  {status}")
    print(f"manifest: {result.manifest}")


def cmd_run(args, require_sweep=False):
    try:
        cfg = load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if require_sweep and cfg.sweep_axis is None:
        print(f"error: {args.config}: no [sweep] section", file=sys.stderr)
        return EXIT_CONFIG
    result = run_scenario(cfg, workers=args.workers, output=args.output)
    _print_run(result)
    return 0 if result.gates_ok else EXIT_GATE


def cmd_reproduce(args):
    overrides = {}
    if args.epsilon is not None:
        overrides["epsilon"] = args.epsilon
    report = reproduce_quoted(overrides, variant=args.variant, with_extras=not args.quick)
    print(report.format())
    if args.json:
        rows = [dict(label=r.target.label, figure=r.target.figure, paper=r.target.value,
                     time=r.target.time, grid_time=r.grid_time, computed=r.computed,
                     matched=r.matched, abs_error=r.best_error) for r in report.rows]
        with open(args.json, "w") as fh:
            json.dump(dict(rows=rows, figures=report.figure_variants(),
                           sanity_deviation=report.sanity_deviation), fh, indent=2)
    return 0 if report.sanity_ok else EXIT_GATE


def cmd_presets(args):
    if args.action == "list":
        for name in PRESETS:
            print(f"{name}  {DESCRIPTIONS[name]}")
        return 0
    try:
        cfg = get_preset(args.name)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_CONFIG
    sys.stdout.write(cfg.to_text())
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bellbath",
        description="Bell-pair entanglement and fidelity dynamics with a local XY spin bath.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("run", "run a scenario config (sweep optional)"),
                           ("sweep", "run a config that has a [sweep] section")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("config")
        p.add_argument("--output", help="override the output directory")
        p.add_argument("--workers", type=int, help="parallel sweep points "
                       "(default: $BELLBATH_WORKERS or 1)")

    p = sub.add_parser("reproduce", help="evaluate the quoted values under both variants")
    p.add_argument("--variant", choices=VARIANT_CHOICES, default="both")
    p.add_argument("--epsilon", type=float, help="thermal tail tolerance")
    p.add_argument("--json", help="also write the report as JSON")
    p.add_argument("--quick", action="store_true",
                   help="skip the ESD and level-count sections")

    p = sub.add_parser("presets", help="list or print figure presets")
    psub = p.add_subparsers(dest="action", required=True)
    psub.add_parser("list")
    emit = psub.add_parser("emit")
    emit.add_argument("name", choices=sorted(PRESETS))
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    if args.command == "sweep":
        return cmd_run(args, require_sweep=True)
    if args.command == "reproduce":
        return cmd_reproduce(args)
    return cmd_presets(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point: ``bicone run | preset | check``."""

from __future__ import annotations

import argparse
import os
import sys
import time

from bicone import checks, scenario
from bicone.errors import BiconeError, ConfigError


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--out-dir", default="bicone-out", help="directory for CSV/SVG artifacts")
    parser.add_argument("--units", choices=("natural", "si"), default=None, help="override the scenario's units")
    parser.add_argument("--entropy-base", choices=("e", "2"), default="e", help="report entropy in nats (e) or bits (2)")
    parser.add_argument("--seed", type=int, default=0, help="seed for the randomised check suites")
    parser.add_argument("--check", action="store_true", help="run the invariant suites before the scenario")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bicone", description="Bimetric light-cone scenario runner")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file")
    run.add_argument("config")
    _common(run)

    preset = sub.add_parser("preset", help="run a shipped scenario")
    preset.add_argument("name", choices=scenario.PRESETS)
    _common(preset)

    check = sub.add_parser("check", help="run all invariant suites")
    check.add_argument("--seed", type=int, default=0)
    return parser


def run_checks(seed: int, out=None) -> bool:
    out = out or sys.stdout
    ok = True
    for check, passed, detail in checks.run_checks(seed):
        ok &= passed
        print(f"[{'PASS' if passed else 'FAIL'}] {check.module}: {check.name} ({detail})", file=out)
    return ok


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        return 0 if run_checks(args.seed) else 1

    if args.check and not run_checks(args.seed):
        print("bicone: invariant suites failed, scenario not run", file=sys.stderr)
        return 1

    try:
        if args.command == "run":
            sc = scenario.load_scenario(args.config)
        else:
            sc = scenario.load_preset(args.name)
        out_dir = os.path.join(args.out_dir, sc.name)
        t0 = time.perf_counter()
        result = scenario.run_scenario(sc, out_dir, units=args.units, entropy_base=args.entropy_base)
    except ConfigError as exc:
        print(f"bicone: config error: {exc}", file=sys.stderr)
        return 2
    except BiconeError as exc:
        print(f"bicone: scenario failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    for quantity, value, unit in result.report:
        print(f"{quantity:>44} = {value}{' ' + unit if unit else ''}")
    for path in result.files:
        print(f"wrote {path}")
    print(f"done in {time.perf_counter() - t0:.3f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())

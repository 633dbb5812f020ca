"""Command-line surface: run, list-checks, explain."""

import argparse
import logging
import os
import sys

from nawarp.harness import checks as checks_mod
from nawarp.harness.config import ConfigError, load_config
from nawarp.harness.runner import (
    EXIT_CONFIG,
    emit_report,
    render_text,
    run,
)


def _setup_logging():
    level = os.environ.get("NAWC_LOG", "warning").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nawarp",
        description="Numerical verification harness for non-abelian warped convolutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run all checks of a scenario config")
    p_run.add_argument("config", help="path to a YAML or JSON scenario file")
    p_run.add_argument("--jobs", type=int, default=1, help="parallel scenarios")
    p_run.add_argument(
        "--format",
        default="json,text,csv",
        help="comma-separated report formats (json, text, csv)",
    )
    p_run.add_argument("--out-dir", default="reports", help="report output directory")
    p_run.add_argument(
        "--seed-override", type=int, default=None, help="replace every scenario seed"
    )
    p_run.add_argument(
        "--fail-fast", action="store_true", help="stop a scenario at its first failure"
    )

    sub.add_parser("list-checks", help="list all registered check ids")

    p_explain = sub.add_parser("explain", help="show anchor and tolerance of one check")
    p_explain.add_argument("check_id")
    return parser


def main(argv=None):
    _setup_logging()
    args = build_parser().parse_args(argv)

    if args.command == "list-checks":
        for cdef in checks_mod.checks_for("all"):
            print(f"{cdef.check_id:28s} [{cdef.module}] {cdef.anchor}")
        return 0

    if args.command == "explain":
        cdef = checks_mod.REGISTRY.get(args.check_id)
        if cdef is None:
            print(f"unknown check id {args.check_id!r}", file=sys.stderr)
            return EXIT_CONFIG
        print(f"check:     {cdef.check_id}")
        print(f"module:    {cdef.module}")
        print(f"anchor:    {cdef.anchor}")
        print(f"tolerance: {cdef.tolerance:.1e}")
        print(f"rationale: {cdef.rationale}")
        return 0

    formats = {f.strip() for f in args.format.split(",") if f.strip()}
    unknown = formats - {"json", "text", "csv"}
    if unknown:
        print(f"unknown report formats: {sorted(unknown)}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        scenarios = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    report = run(
        scenarios,
        jobs=args.jobs,
        seed_override=args.seed_override,
        fail_fast=args.fail_fast,
    )
    try:
        emit_report(report, formats, args.out_dir)
    except ConfigError as exc:
        print(f"report error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(render_text(report), end="")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface.

verify  runs named checks at one m and emits a JSON report array
dims    prints the headline dimensions at one m
export  writes every constructed matrix to coordinate text files

Exit codes: 0 when no check failed (findings are not failures), 1 when at
least one check failed, 2 on a configuration error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .checks import (
    CHECK_IDS,
    CheckContext,
    ConfigError,
    RunConfig,
    export_matrices,
    headline_dimensions,
    render_reports,
    run,
)


def _add_m_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=int, required=True, help="half the ground set size; supported range 1..4, m=5 behind --allow-m5")
    parser.add_argument("--allow-m5", action="store_true", help="opt into the slow m=5 computations")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doubled-odd",
        description="Exact verification of the doubled Odd graph construction and its matrix algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run checks and emit a JSON report")
    _add_m_argument(verify)
    verify.add_argument(
        "--checks",
        default="all",
        help="comma separated check ids, or 'all' (default) for every check applicable at m; known ids: " + ", ".join(CHECK_IDS),
    )
    verify.add_argument("--out", default=None, help="write the JSON report to this file instead of stdout")
    verify.add_argument("--cache-dir", default=None, help="directory for cached algebra bases")
    verify.add_argument("--export-dir", default=None, help="also export all matrices to this directory")

    dims = sub.add_parser("dims", help="print vertex count and algebra dimensions")
    _add_m_argument(dims)
    dims.add_argument("--cache-dir", default=None, help="directory for cached algebra bases")

    export = sub.add_parser("export", help="write all matrices to coordinate text files")
    _add_m_argument(export)
    export.add_argument("--export-dir", required=True, help="output directory")
    export.add_argument("--cache-dir", default=None, help="directory for cached algebra bases")

    return parser


def _parse_checks(raw: str) -> tuple[str, ...] | None:
    names = tuple(part.strip() for part in raw.split(",") if part.strip())
    if not names:
        raise ConfigError("empty --checks list")
    if names == ("all",):
        return None
    return names


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            cfg = RunConfig(
                m=args.m,
                checks=_parse_checks(args.checks),
                cache_dir=args.cache_dir,
                export_dir=args.export_dir,
                allow_m5=args.allow_m5,
            )
            reports = run(cfg, progress=lambda line: print(line, file=sys.stderr))
            text = render_reports(reports)
            if args.out is not None:
                Path(args.out).write_text(text)
                print(f"report written to {args.out}", file=sys.stderr)
            else:
                sys.stdout.write(text)
            return 1 if any(r.status == "fail" for r in reports) else 0

        if args.command == "dims":
            RunConfig(m=args.m, allow_m5=args.allow_m5)
            dims = headline_dimensions(args.m, args.cache_dir)
            print(f"m = {args.m}")
            print(f"vertices          = {dims['vertices']}")
            print(f"centralizer dim   = {dims['centralizer_dim']}")
            print(f"Terwilliger dim   = {dims['terwilliger_dim']}")
            print(f"center dim        = {dims['center_dim']}")
            return 0

        if args.command == "export":
            RunConfig(m=args.m, allow_m5=args.allow_m5)
            ctx = CheckContext(args.m, args.cache_dir)
            written = export_matrices(args.m, args.export_dir, ctx=ctx)
            print(f"wrote {len(written)} files to {args.export_dir}", file=sys.stderr)
            return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())

"""Command line: ``lckholonomy check ...`` and ``lckholonomy export ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fileformat
from .catalog import EXAMPLES, CatalogError, make_entry
from .fileformat import DescriptionError
from .frames import FrameError
from .rings import as_fraction
from .suites import SUITES, SuiteError, run_custom, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _rational(text: str):
    try:
        return as_fraction(text.strip())
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def _rational_list(text: str | None):
    if text is None:
        return None
    return [_rational(part) for part in text.split(",") if part.strip()]


def _add_selector(p: argparse.ArgumentParser) -> None:
    p.add_argument("--example", choices=EXAMPLES, help="catalog family")
    p.add_argument("--n", type=int, help="complex dimension (heisenberg, hopf)")
    p.add_argument("--a", help="heisenberg weights a_1..a_{n-1}, comma-separated rationals")
    p.add_argument("--mu", help="inoue parameter mu (nonzero rational)")
    p.add_argument("--y", help="inoue parameter y (rational)")
    p.add_argument("--s", type=int, help="OT parameter s")
    p.add_argument("--r", help="OT parameters r_1..r_s, comma-separated rationals")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lckholonomy",
                                     description="Exact verification of LCK frame geometries.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run a verification suite")
    _add_selector(check)
    check.add_argument("--file", help="frame-algebra description (YAML) instead of --example")
    check.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, or all (default)")
    check.add_argument("--json", action="store_true", help="emit a JSON report")

    export = sub.add_parser("export", help="write a catalog entry as a frame-algebra description")
    _add_selector(export)
    export.add_argument("--output", "-o", help="output path (default: stdout)")
    return parser


def _params(args) -> dict:
    return {
        "n": args.n,
        "a": _rational_list(args.a),
        "mu": None if args.mu is None else _rational(args.mu),
        "y": None if args.y is None else _rational(args.y),
        "s": args.s,
        "r": _rational_list(args.r),
    }


def _check(args) -> int:
    if args.file and args.example:
        raise InputError("use either --example or --file, not both")
    if args.file:
        path = Path(args.file)
        try:
            desc = fileformat.load(path)
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}") from None
        except DescriptionError as exc:
            raise InputError(f"{path}: {exc}") from None
        report = run_custom(desc, args.suite, name=path.stem)
    elif args.example:
        report = run_suite(args.example, args.suite, **_params(args))
    else:
        raise InputError("one of --example or --file is required")
    print(report.to_json() if args.json else report.to_text())
    return report.exit_code


def _export(args) -> int:
    if not args.example:
        raise InputError("--example is required")
    entry = make_entry(args.example, **{k: v for k, v in _params(args).items() if v is not None})
    text = fileformat.dumps(entry.fa, entry.H, name=entry.ident, theta=entry.lee.theta,
                            vaisman=entry.vaisman)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        if args.command == "check":
            return _check(args)
        return _export(args)
    except (InputError, SuiteError, CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FrameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``sincspec verify``, ``sincspec curve`` and ``sincspec list``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report


def _parse_value(text: str):
    """JSON where possible (numbers, lists), otherwise the raw string."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _parse_params(extra: list[str]) -> dict:
    params = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--") or len(tok) == 2:
            raise SystemExit(f"error: expected --name value, got {tok!r}")
        key, eq, val = tok[2:].partition("=")
        if not eq:
            try:
                val = next(it)
            except StopIteration:
                raise SystemExit(f"error: parameter --{key} needs a value") from None
        params[key] = _parse_value(val)
    return params


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sincspec", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite",
                       description="Run a suite; extra --name value pairs override defaults.")
    v.add_argument("suite", help=f"one of: {', '.join(report.SUITES)}")
    v.add_argument("--json", type=Path, help="write the JSON report here")
    v.add_argument("--quiet", action="store_true", help="print only the summary line")

    c = sub.add_parser("curve", help="write a curve as CSV",
                       description="Write a curve; extra --name value pairs set its parameters.")
    c.add_argument("kind", help=f"one of: {', '.join(report.CURVE_KINDS)}")
    c.add_argument("--out", type=Path, required=True, help="CSV output path")

    sub.add_parser("list", help="list suites, check families and curve kinds")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args, extra = ap.parse_known_args(argv)

    if args.command == "list":
        if extra:
            ap.error(f"unrecognized arguments: {' '.join(extra)}")
        print("suites: " + ", ".join(report.SUITES))
        for cid, desc, anchor in report.list_entries():
            print(f"  {cid:<40} {anchor}")
        print("curves: " + ", ".join(report.CURVE_KINDS))
        return 0

    params = _parse_params(extra)
    try:
        if args.command == "verify":
            rep = report.run_suite(args.suite, params)
        else:
            rows = report.emit_curve(args.kind, params, args.out)
    except (KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2

    if args.command == "curve":
        print(f"wrote {rows} rows to {args.out}")
        return 0

    lines = rep.summary_lines()
    print("\n".join(lines[-1:] if args.quiet else lines))
    if args.json is not None:
        args.json.write_text(rep.to_json() + "\n", encoding="utf-8")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())

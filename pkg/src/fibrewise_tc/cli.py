"""Command line front end: ``invariants`` and ``verify <target>``.

Reports are JSON on stdout (sorted keys, so identical flags give identical
bytes); a one-line summary goes to stderr. Exit status is 0 when every check
passes, 1 when a check fails and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .complex_core import ComplexError
from .fixtures import get_complex
from .linalg import CoefficientError, parse_field
from .ring_invariants import DEFAULT_FIELDS, tc_lower_bound_report

SCHEMA_VERSION = 1
TARGETS = ("strom", "planner", "lift", "extend", "kunneth")


class InputError(Exception):
    pass


def _fields(raw):
    if not raw:
        return DEFAULT_FIELDS
    out = []
    for text in raw:
        for part in text.split(","):
            F = parse_field(part)
            if not F.is_field:
                raise InputError(f"--field {part}: a field is required (q, f2, fp:<p>)")
            out.append(F)
    return tuple(out)


def _load_planner(spec: str):
    from . import planner as pl

    key = spec.strip().lower()
    if key == "point":
        return pl.point_planner()
    if key.startswith("circle") and key[6:].isdigit():
        return pl.circle_planner(int(key[6:]))
    path = Path(spec)
    if not path.exists():
        raise InputError(f"unknown planner fixture {spec!r}")
    try:
        desc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{spec}: {exc}") from exc
    return pl.planner_from_description(desc)


def cmd_invariants(args) -> dict:
    K = get_complex(args.complex)
    report = tc_lower_bound_report(K, _fields(args.field))
    report["pass"] = report["consistent"]
    return report


def cmd_verify(args) -> dict:
    target = args.target
    if target == "planner":
        from .planner import validate_planner

        P = _load_planner(args.fixture)
        return validate_planner(P.complex, P, args.samples, args.seed)
    if target == "kunneth":
        K = get_complex(args.complex)
        report = tc_lower_bound_report(K, _fields(args.field))
        report["pass"] = report["consistent"]
        return report
    K = get_complex(args.complex)
    if target == "strom":
        from .strom_milnor import verify_strom

        return verify_strom(K, args.samples, args.seed)
    from .fibrewise_paths import verify_extend, verify_lift

    fn = verify_lift if target == "lift" else verify_extend
    return fn(K, args.samples, args.seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fibrewise-tc",
                                     description="Cohomological bounds and exact checks for motion planners.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--complex", default="s1", help="built-in name, s1:<n>, sphere:<n> or a JSON path")
        p.add_argument("--field", action="append", help="q, f2, fp:<p>; repeatable (default q,f2,f3)")
        p.add_argument("--out", help="also write the JSON report to this path")

    inv = sub.add_parser("invariants", help="Betti numbers, cup length, zero-divisor cup length, bounds")
    common(inv)
    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("target", choices=TARGETS)
    common(ver)
    ver.add_argument("--samples", type=int, default=10_000)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--fixture", default="circle12", help="planner fixture: circle<n>, point or a JSON path")
    return parser


def _summary(report: dict, label: str) -> str:
    failed = [c["name"] for c in report.get("checks", []) if not c["pass"]]
    status = "pass" if report["pass"] else "FAIL"
    tail = f" failed: {', '.join(failed)}" if failed else ""
    if "samples" in report:
        tail += f" ({report['samples']} samples)"
    if "bounds" in report:
        tail += " " + "; ".join(report["bounds"])
    return f"{label} {report.get('complex', '')}: {status}{tail}"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 0) is not None and getattr(args, "samples", 0) < 0:
        parser.error("--samples must be non-negative")
    try:
        if args.command == "invariants":
            report, label = cmd_invariants(args), "invariants"
        else:
            report, label = cmd_verify(args), f"verify {args.target}"
    except (ComplexError, CoefficientError, InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {"schema_version": SCHEMA_VERSION, "command": label, **report}
    text = json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    print(_summary(report, label), file=sys.stderr)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())

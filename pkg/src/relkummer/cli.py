"""Command line: ``relkummer {analyze,verify,random,selftest}``.

Exit status: 0 pass, 1 verification failure, 2 invalid instance,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .campaign import DISTRIBUTION_NOTE, CampaignConfig, run_campaign, run_instance
from .errors import DomainError, InvariantViolation, KummerError, ParseError, UnsupportedInstanceError
from .fpgmod import annihilator_exponent, jordan_type
from .instance import InstanceFile, parse_instance
from .kummer import build_extension
from .report import campaign_dict, campaign_text, format_matrix, report_json, report_text, report_dict
from .selftest import run_selftest

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3


def _load(path: str) -> InstanceFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UnsupportedInstanceError(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(text)


def analyze_instance(inst: InstanceFile) -> dict:
    ctx = inst.context()
    ext, _ = build_extension(inst.parsed_generators(ctx), ctx)
    cyclic = []
    for start, length in ext.chains:
        gen = ext.basis_classes[start]
        cyclic.append({"generator": str(gen.representative),
                       "annihilator_exponent": annihilator_exponent(gen, ctx),
                       "dimension": length})
    return {
        "instance": inst.to_dict(),
        "basis": [str(b) for b in ext.basis],
        "cyclic_generators": cyclic,
        "jordan_type": list(jordan_type(ext.module)),
        "x_matrix": ext.module.X.tolist(),
        "notes": list(ext.notes),
    }


def _analysis_text(a: dict) -> str:
    lines = [f"basis of B/E^xp ({len(a['basis'])}): {', '.join(a['basis']) or '(none)'}"]
    for i, c in enumerate(a["cyclic_generators"]):
        lines.append(f"cyclic generator {i}: {c['generator']}  s = {c['annihilator_exponent']}")
    lines.append(f"Jordan type: {tuple(a['jordan_type'])}")
    lines.append("x-matrix:")
    lines.extend("  " + row for row in format_matrix(a["x_matrix"]))
    lines.extend(f"note: {n}" for n in a["notes"])
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    a = analyze_instance(_load(args.file))
    sys.stdout.write(json.dumps(a, indent=2) + "\n" if args.json else _analysis_text(a))
    return EXIT_PASS


def cmd_verify(args) -> int:
    report = run_instance(_load(args.file))
    if args.out:
        Path(args.out).write_text(report_json(report), encoding="utf-8")
    sys.stdout.write(report_text(report))
    return EXIT_PASS if report.verdict else EXIT_FAIL


def cmd_random(args) -> int:
    config = CampaignConfig(args.count, args.p, args.l, args.field, args.max_gens, args.max_deg, args.seed)
    reports = run_campaign(config, jobs=args.jobs)
    summary = campaign_dict(config.to_dict(), reports, DISTRIBUTION_NOTE)
    if args.out:
        payload = dict(summary)
        payload["reports"] = [report_dict(r) for r in reports]
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    sys.stdout.write(campaign_text(summary))
    return EXIT_PASS if summary["failed"] == 0 else EXIT_FAIL


def cmd_selftest(args) -> int:
    results = run_selftest()
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results)} suites; " + ("all pass" if ok else "FAILED: " + ", ".join(failed)))
    return EXIT_PASS if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relkummer", description="Exact Kummer module computations over k(t).")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="basis, exponents and Jordan type of B/E^xp")
    a.add_argument("file")
    a.add_argument("--json", action="store_true", help="emit JSON instead of text")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run every check on one instance")
    v.add_argument("file")
    v.add_argument("--out", help="write the JSON report here")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("random", help="seeded campaign of random instances")
    r.add_argument("--count", type=int, required=True)
    r.add_argument("--p", type=int, required=True)
    r.add_argument("--l", type=int, required=True)
    r.add_argument("--field", required=True, help="GF(r) or GF(r^m)")
    r.add_argument("--max-gens", type=int, default=3)
    r.add_argument("--max-deg", type=int, default=5)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--jobs", type=int, default=1, help="worker processes (output order is unaffected)")
    r.add_argument("--out", help="write the JSON campaign report here")
    r.set_defaults(func=cmd_random)

    s = sub.add_parser("selftest", help="run the built-in oracle suites")
    s.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ParseError, UnsupportedInstanceError, DomainError) as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except KummerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

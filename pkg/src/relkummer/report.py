"""JSON and plain-text rendering of verification reports."""

from __future__ import annotations

import json
from typing import Sequence

from .kummer import VerificationReport

SCHEMA_VERSION = 1


def report_dict(report: VerificationReport) -> dict:
    # key order is part of the output contract
    return {
        "schema_version": SCHEMA_VERSION,
        "instance": report.instance,
        "basis": list(report.basis),
        "jordan_type_module": list(report.jordan_type_module),
        "jordan_type_galois": list(report.jordan_type_galois),
        "checks": [c.to_dict() for c in report.checks],
        "verdict": "pass" if report.verdict else "fail",
        "seed": report.seed,
        "notes": list(report.notes),
        "x_matrix": report.x_matrix,
        "summands": report.summands,
    }


def report_json(report: VerificationReport) -> str:
    return json.dumps(report_dict(report), indent=2) + "\n"


def _table(rows: Sequence[Sequence[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]


def format_matrix(X) -> list[str]:
    rows = [[str(v) for v in row] for row in X]
    if not rows:
        return ["(empty)"]
    return ["[ " + line + " ]" for line in _table(rows)]


def report_text(report: VerificationReport) -> str:
    inst = report.instance
    lines = []
    if inst:
        head = inst.get("label") or "instance"
        lines.append(f"{head}: p={inst.get('p')} l={inst.get('l')} k={inst.get('field')}  "
                     f"generators={inst.get('generators')}")
    lines.append(f"basis of B/E^xp: {', '.join(report.basis) if report.basis else '(none)'}")
    lines.append(f"Jordan type B/E^xp: {tuple(report.jordan_type_module)}")
    lines.append(f"Jordan type N_B:    {tuple(report.jordan_type_galois)}")
    for note in report.notes:
        lines.append(f"note: {note}")
    rows = [("check", "result", "detail")]
    for c in report.checks:
        detail = c.detail
        if not c.passed and c.witness is not None:
            detail = f"witness {json.dumps(c.witness)}"
        rows.append((c.name, "pass" if c.passed else "FAIL", detail))
    lines.extend(_table(rows))
    lines.append(f"verdict: {'pass' if report.verdict else 'FAIL'} (seed {report.seed})")
    return "\n".join(lines) + "\n"


def campaign_dict(config: dict, reports: Sequence[VerificationReport], distribution: str) -> dict:
    passed = sum(r.verdict for r in reports)
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "distribution": distribution,
        "count": len(reports),
        "passed": passed,
        "failed": len(reports) - passed,
        "verdict": "pass" if passed == len(reports) else "fail",
        "instances": [
            {"label": r.instance.get("label"), "generators": r.instance.get("generators"),
             "seed": r.seed, "jordan_type": list(r.jordan_type_module),
             "verdict": "pass" if r.verdict else "fail",
             "failed_checks": [c.name for c in r.checks if not c.passed]}
            for r in reports
        ],
    }


def campaign_text(summary: dict) -> str:
    rows = [("#", "label", "type", "result")]
    for i, inst in enumerate(summary["instances"]):
        result = inst["verdict"]
        if inst["failed_checks"]:
            result += " (" + ",".join(inst["failed_checks"]) + ")"
        rows.append((str(i), inst["label"] or "", str(tuple(inst["jordan_type"])), result))
    lines = _table(rows) if summary["instances"] else []
    lines.append(f"{summary['passed']}/{summary['count']} passed; verdict: {summary['verdict']}")
    return "\n".join(lines) + "\n"

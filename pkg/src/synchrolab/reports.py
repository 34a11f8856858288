"""Deterministic emission of experiment results.

Reports are byte-identical across runs with the same inputs and budget, so
wall-clock timings are excluded from the canonical forms; passing
``include_timings=True`` adds them for interactive use.
"""
from __future__ import annotations

import json

from .experiments import ExperimentReport, InstanceRecord


def instance_record_json(rec: InstanceRecord, timings: float | None = None) -> str:
    payload = {
        "group": rec.group,
        "map": rec.map_text,
        "verdict": rec.verdict,
        "min_rank": rec.min_rank,
        "word_length": rec.word_length,
        "timings": timings,
        "note": rec.note,
    }
    return json.dumps(payload, separators=(",", ":"))


def report_emit(
    report: ExperimentReport, fmt: str = "table", include_timings: bool = False
) -> str:
    if fmt == "table":
        return _emit_table(report, include_timings)
    if fmt == "jsonl":
        return _emit_jsonl(report, include_timings)
    raise ValueError(f"unknown report format {fmt!r}; use 'table' or 'jsonl'")


def _emit_table(report: ExperimentReport, include_timings: bool) -> str:
    lines = [
        f"experiment      {report.theorem_id}",
        f"status          {report.status}",
        f"max degree      {report.max_degree}",
        f"instances       {report.instances_tested}",
        f"counterexamples {len(report.counterexamples)}",
        f"witnesses       {len(report.witnesses)}",
    ]
    if include_timings:
        lines.append(f"wall time       {report.wall_time:.2f}s")
    for rec in report.counterexamples:
        lines.append(f"  COUNTEREXAMPLE {rec.group} {rec.map_text} {rec.note}")
    for rec in report.witnesses:
        lines.append(
            f"  witness {rec.group} {rec.map_text} min_rank={rec.min_rank} {rec.note}"
        )
    for note in report.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def _emit_jsonl(report: ExperimentReport, include_timings: bool) -> str:
    lines = []
    summary = {
        "experiment": report.theorem_id,
        "status": report.status,
        "max_degree": report.max_degree,
        "instances": report.instances_tested,
        "counterexamples": len(report.counterexamples),
        "witnesses": len(report.witnesses),
        "notes": report.notes,
        "wall_time": round(report.wall_time, 3) if include_timings else None,
    }
    lines.append(json.dumps(summary, separators=(",", ":")))
    for rec in report.counterexamples:
        lines.append(instance_record_json(rec))
    for rec in report.witnesses:
        lines.append(instance_record_json(rec))
    return "\n".join(lines) + "\n"

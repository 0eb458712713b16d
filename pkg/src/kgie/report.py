"""Evaluation report documents: assembly, JSON (de)serialization, rendering.

A report captures every metric for one (pipeline, stage) pair at full
precision; rounding to three decimals happens only when rendering.
Undefined values (empty denominators) are carried as ``None`` and
serialized as JSON ``null``, which renders as ``n/a``.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Mapping, Sequence

from .consistency import RATIO_KEYS, ConsistencyReport
from .metrics import QualityScores
from .ranking import group_scores, harmonic_mean
from .stats import StatsRecord

SCHEMA_VERSION = "kgi-report/1"

#: Render column order: entity coverage/correctness/F1, triple
#: coverage/correctness/F1, duplicate complement, six compliance scores.
RENDER_COLUMNS = (
    "cov_e",
    "corr_e",
    "f1_e",
    "cov_t",
    "corr_t",
    "f1_t",
    "1-dr",
    "disjoint",
    "domain",
    "range",
    "direction",
    "datatype",
    "format",
)

_COMPLIANCE_COLUMN_KEYS = dict(zip(RENDER_COLUMNS[7:], RATIO_KEYS))


def f1_score(coverage: float | None, correctness: float | None) -> float | None:
    """Harmonic mean of a (coverage, correctness) pair, None-propagating."""
    if coverage is None or correctness is None:
        return None
    return harmonic_mean([coverage, correctness])


def build_report(
    pipeline_id: str,
    stage: int,
    quality: QualityScores,
    consistency: ConsistencyReport,
    stats: StatsRecord | None = None,
    duration_s: float | None = None,
    config: Mapping[str, Any] | None = None,
) -> dict[str, Any]:
    """Assemble the JSON-ready report document for one evaluated stage."""
    compliance = consistency.compliance
    groups = group_scores(
        quality.cov_e,
        quality.cov_t,
        quality.corr_e,
        quality.corr_t,
        quality.dup_rate,
        [compliance[k] for k in RATIO_KEYS],
    )
    report: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "pipeline": pipeline_id,
        "stage": stage,
        "coverage": {
            "cov_e": quality.cov_e,
            "cov_t": quality.cov_t,
            "source_cov": quality.source_cov,
        },
        "correctness": {
            "corr_e": quality.corr_e,
            "corr_t": quality.corr_t,
            "f1_e": f1_score(quality.cov_e, quality.corr_e),
            "f1_t": f1_score(quality.cov_t, quality.corr_t),
            "dup_rate": quality.dup_rate,
        },
        "consistency": {
            "ratios": {k: consistency.ratios.get(k) for k in RATIO_KEYS},
            "compliance": {k: compliance.get(k) for k in RATIO_KEYS},
        },
        "groups": {
            "coverage": groups.coverage,
            "correctness": groups.correctness,
            "consistency": groups.consistency,
        },
        "duration_s": duration_s,
        "config": dict(config or {}),
    }
    if stats is not None:
        report["stats"] = {
            "fact_count": stats.fact_count,
            "entity_count": stats.entity_count,
            "relation_count": stats.relation_count,
            "relation_count_incl_type": stats.relation_count_incl_type,
            "type_count": stats.type_count,
            "untyped_count": stats.untyped_count,
            "density": stats.density,
        }
    return report


def report_json(report: Mapping[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def save_report(report: Mapping[str, Any], path: str | Path) -> None:
    Path(path).write_text(report_json(report), encoding="utf-8")


def load_report(path: str | Path) -> dict[str, Any]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError(f"{path}: report must be a JSON object")
    schema = data.get("schema")
    if schema != SCHEMA_VERSION:
        raise ValueError(
            f"{path}: unsupported report schema {schema!r} (expected {SCHEMA_VERSION!r})"
        )
    return data


def _check_same_schema(reports: Sequence[Mapping[str, Any]]) -> None:
    versions = {r.get("schema") for r in reports}
    if len(versions) > 1:
        raise ValueError(f"reports mix schema versions: {sorted(map(str, versions))}")
    if versions and versions != {SCHEMA_VERSION}:
        raise ValueError(f"unsupported report schema {versions.pop()!r}")


def render_value(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.3f}"


def _row_values(report: Mapping[str, Any]) -> dict[str, float | None]:
    coverage = report.get("coverage", {})
    correctness = report.get("correctness", {})
    compliance = report.get("consistency", {}).get("compliance", {})
    dup = correctness.get("dup_rate")
    row: dict[str, float | None] = {
        "cov_e": coverage.get("cov_e"),
        "corr_e": correctness.get("corr_e"),
        "f1_e": correctness.get("f1_e"),
        "cov_t": coverage.get("cov_t"),
        "corr_t": correctness.get("corr_t"),
        "f1_t": correctness.get("f1_t"),
        "1-dr": None if dup is None else 1.0 - dup,
    }
    for column, key in _COMPLIANCE_COLUMN_KEYS.items():
        row[column] = compliance.get(key)
    return row


def _sorted_reports(reports: Sequence[Mapping[str, Any]]) -> list[Mapping[str, Any]]:
    return sorted(reports, key=lambda r: (str(r.get("pipeline", "")), r.get("stage", 0)))


def render_reports(reports: Sequence[Mapping[str, Any]], fmt: str = "table") -> str:
    """Render reports as an aligned table, CSV, or JSON rows.

    Rows are sorted by pipeline id then stage; all numbers are shown at
    three decimals and undefined values as ``n/a``.
    """
    _check_same_schema(reports)
    ordered = _sorted_reports(reports)
    header = ["pipeline", "stage", *RENDER_COLUMNS]
    rows: list[list[str]] = []
    for rep in ordered:
        values = _row_values(rep)
        rows.append(
            [
                str(rep.get("pipeline", "")),
                str(rep.get("stage", "")),
                *(render_value(values[c]) for c in RENDER_COLUMNS),
            ]
        )
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()
    if fmt == "json":
        payload = [dict(zip(header, row)) for row in rows]
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if fmt == "table":
        widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i]) for i in range(len(header))]
        lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip()]
        lines.extend("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in rows)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown render format {fmt!r}")

"""Ingestion and persistence: JSON documents and CSV measurement tables.

Structured documents (hierarchy, judgments, sessions, results) are JSON with
a ``schema`` field of ``ahp-spec/1``. Matrix entries may be written as
fraction literals ("1/7") and are parsed exactly. Measurement tables are
UTF-8 comma-delimited text with a ``project_id`` column plus one column per
indicator id. Result serialization is deterministic: sorted keys and floats
rounded to 12 significant digits at document-build time, so identical runs
produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .hierarchy import Criterion, ExpertJudgment, Hierarchy, Indicator
from .matrices import PairwiseMatrix, validate
from .scoring import CohortResult

SCHEMA = "ahp-spec/1"


def round12(x: float) -> float:
    """Round to 12 significant digits; the canonical precision of results."""
    return float(f"{float(x):.12g}")


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path, doc: dict):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _check_schema(doc: dict, kind: str):
    if not isinstance(doc, dict):
        raise ValidationError(f"expected a JSON object for a {kind} document")
    if doc.get("schema") != SCHEMA:
        raise ValidationError(f"unsupported schema {doc.get('schema')!r}, expected {SCHEMA!r}")
    if doc.get("kind") != kind:
        raise ValidationError(f"expected a {kind!r} document, got {doc.get('kind')!r}")


def parse_entry(raw) -> float:
    """Parse one matrix entry: a number or an exact fraction literal."""
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return float(raw)
    if isinstance(raw, str):
        try:
            return float(Fraction(raw.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse matrix entry {raw!r}") from exc
    raise ValidationError(f"cannot parse matrix entry {raw!r}")


def parse_matrix(rows) -> np.ndarray:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValidationError("matrix must be a list of rows")
    return np.array([[parse_entry(x) for x in row] for row in rows])


# -- hierarchy -----------------------------------------------------------


def hierarchy_to_doc(h: Hierarchy) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "hierarchy",
        "criteria": [
            {
                "id": c.id,
                "name": c.name,
                "indicators": [
                    {
                        "id": ind.id,
                        "name": ind.name,
                        "direction": ind.direction,
                        "numerator": ind.numerator,
                        "denominator": ind.denominator,
                    }
                    for ind in h.indicators[c.id]
                ],
            }
            for c in h.criteria
        ],
    }


def hierarchy_from_doc(doc: dict) -> Hierarchy:
    _check_schema(doc, "hierarchy")
    problems: list[str] = []
    criteria: list[Criterion] = []
    indicators: dict[str, list[Indicator]] = {}
    for c in doc.get("criteria", []):
        cid = c.get("id")
        if not cid:
            problems.append("criterion without id")
            continue
        criteria.append(Criterion(cid, c.get("name", cid)))
        inds = []
        for ind in c.get("indicators", []):
            try:
                inds.append(
                    Indicator(
                        id=ind["id"],
                        name=ind.get("name", ind["id"]),
                        direction=ind.get("direction", ""),
                        numerator=ind.get("numerator", ""),
                        denominator=ind.get("denominator", ""),
                    )
                )
            except (KeyError, ValidationError) as exc:
                problems.append(f"criterion {cid!r}: bad indicator ({exc})")
        indicators[cid] = inds
    if problems:
        raise ValidationError("invalid hierarchy document", problems)
    return Hierarchy(criteria, indicators)


def load_hierarchy(path) -> Hierarchy:
    return hierarchy_from_doc(read_json(path))


# -- judgments -----------------------------------------------------------


@dataclass
class JudgmentLoadResult:
    experts: list[ExpertJudgment]
    rejected: dict[str, list[str]] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


def judgments_to_doc(judgments: list[ExpertJudgment]) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "judgments",
        "experts": [
            {
                "expert_id": j.expert_id,
                "criteria_matrix": j.criteria_matrix.entries.tolist(),
                "indicator_matrices": {
                    cid: m.entries.tolist() for cid, m in sorted(j.indicator_matrices.items())
                },
            }
            for j in judgments
        ],
    }


def judgments_from_doc(doc: dict, hierarchy: Hierarchy) -> JudgmentLoadResult:
    """Load per-expert matrices, rejecting any expert whose matrices fail
    validation or do not match the hierarchy. Non-reciprocal matrices are
    accepted with a warning."""
    _check_schema(doc, "judgments")
    result = JudgmentLoadResult(experts=[])
    for k, e in enumerate(doc.get("experts", [])):
        eid = e.get("expert_id", f"expert-{k}")
        problems: list[str] = []
        try:
            mats: dict[str, PairwiseMatrix] = {}
            criteria = PairwiseMatrix(parse_matrix(e["criteria_matrix"]))
            for cid, rows in e.get("indicator_matrices", {}).items():
                mats[cid] = PairwiseMatrix(parse_matrix(rows))
            judgment = ExpertJudgment(eid, criteria, mats)
            judgment.check_against(hierarchy)
        except KeyError as exc:
            problems.append(f"missing field {exc}")
        except ValidationError as exc:
            problems.append(str(exc))
            problems.extend(exc.diagnostics)
        if problems:
            result.rejected[eid] = problems
            continue
        for name, m in [("criteria", criteria)] + sorted(mats.items()):
            dev = m.reciprocity_deviation()
            if dev > 1e-9:
                result.warnings.append(
                    f"expert {eid!r}, matrix {name!r}: not exactly reciprocal "
                    f"(max |log(a_ij*a_ji)| = {dev:.4g})"
                )
        result.experts.append(judgment)
    return result


def load_judgments(path, hierarchy: Hierarchy) -> JudgmentLoadResult:
    return judgments_from_doc(read_json(path), hierarchy)


# -- measurements --------------------------------------------------------


@dataclass
class ProjectMeasurements:
    """Raw indicator values, one row per project, hierarchy indicator order.
    Missing or non-numeric cells are NaN and itemized in ``diagnostics``."""

    project_ids: list[str]
    indicator_ids: list[str]
    values: np.ndarray
    diagnostics: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def measurements_from_csv(text: str, hierarchy: Hierarchy) -> ProjectMeasurements:
    indicator_ids = hierarchy.indicator_ids()
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ValidationError("measurement table is empty") from None
    header = [h.strip() for h in header]
    if not header or header[0] != "project_id":
        raise ValidationError("first column of the measurement table must be 'project_id'")
    warnings = []
    for col in header[1:]:
        if col not in indicator_ids:
            warnings.append(f"unknown column {col!r} ignored")
    missing_cols = [iid for iid in indicator_ids if iid not in header]
    if missing_cols:
        raise ValidationError("measurement table lacks indicator columns", missing_cols)
    col_of = {iid: header.index(iid) for iid in indicator_ids}

    project_ids: list[str] = []
    rows: list[list[float]] = []
    diagnostics: list[str] = []
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        pid = row[0].strip()
        project_ids.append(pid)
        vals = []
        for iid in indicator_ids:
            idx = col_of[iid]
            cell = row[idx].strip() if idx < len(row) else ""
            if not cell:
                diagnostics.append(f"line {line_no}, project {pid!r}: missing value for {iid!r}")
                vals.append(np.nan)
                continue
            try:
                vals.append(float(cell))
            except ValueError:
                diagnostics.append(
                    f"line {line_no}, project {pid!r}: non-numeric value {cell!r} for {iid!r}"
                )
                vals.append(np.nan)
        rows.append(vals)
    if not project_ids:
        raise ValidationError("measurement table has no data rows")
    return ProjectMeasurements(
        project_ids=project_ids,
        indicator_ids=indicator_ids,
        values=np.array(rows, dtype=float),
        diagnostics=diagnostics,
        warnings=warnings,
    )


def load_measurements(path, hierarchy: Hierarchy) -> ProjectMeasurements:
    return measurements_from_csv(Path(path).read_text(encoding="utf-8"), hierarchy)


def measurements_to_csv(m: ProjectMeasurements) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["project_id"] + m.indicator_ids)
    for pid, row in zip(m.project_ids, m.values):
        writer.writerow([pid] + [repr(float(v)) for v in row])
    return out.getvalue()


# -- results -------------------------------------------------------------


def results_to_doc(result: CohortResult, params: dict | None = None, bins: int = 20) -> dict:
    """Canonical results document; all floats rounded to 12 significant digits
    so serialization is byte-stable and round-trips exactly."""
    edges, counts = result.histogram(bins)
    return {
        "schema": SCHEMA,
        "kind": "results",
        "params": params or {},
        "group_weights": {
            "values": [round12(x) for x in result.group_weights.values],
            "variances": [round12(x) for x in result.group_weights.variances],
        },
        "scores": [
            {
                "project_id": s.project_id,
                "score": round12(s.score),
                "sigma": round12(s.sigma),
                "contributions": [
                    {
                        "indicator_id": c.indicator_id,
                        "weight": round12(c.weight),
                        "value": round12(c.value),
                        "product": round12(c.product),
                    }
                    for c in s.contributions
                ],
            }
            for s in result.scores
        ],
        "consistency": {
            eid: {
                name: {
                    "lambda_max": round12(r.lambda_max),
                    "ci": round12(r.ci),
                    "ri": round12(r.ri),
                    "cr": round12(r.cr),
                    "gci": round12(r.gci),
                    "cr_accepted": r.cr_accepted,
                    "alonso_lamata_accepted": r.alonso_lamata_accepted,
                }
                for name, r in reports.items()
            }
            for eid, reports in result.consistency.items()
        },
        "rejected": {pid: list(missing) for pid, missing in result.rejected.items()},
        "histogram": {
            "edges": [round12(x) for x in edges],
            "counts": [int(c) for c in counts],
        },
        "warnings": list(result.warnings),
    }


def save_results(path, result: CohortResult, params: dict | None = None) -> dict:
    doc = results_to_doc(result, params)
    write_json(path, doc)
    return doc


def load_results(path) -> dict:
    doc = read_json(path)
    _check_schema(doc, "results")
    return doc

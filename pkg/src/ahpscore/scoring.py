"""Cohort scoring: ECDF normalization, weighted scores, ranking and reports.

A project's score is the group-weight-weighted sum of its ECDF-normalized
indicator values, guaranteed to lie in [0, 1]. Each score carries the
first-order standard deviation propagated from judgment inconsistencies and a
per-indicator contribution breakdown.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ecdf import STANDARD, fit_ecdf, normalize_measurement
from .errors import ValidationError
from .hierarchy import (
    ExpertJudgment,
    GlobalWeights,
    Hierarchy,
    assemble_weight_matrix,
    criteria_priorities,
    expert_global_weights,
    group_aggregate,
    indicator_local_priorities,
)
from .matrices import ConsistencyReport, consistency_report
from .uncertainty import expert_variance_bundle, group_variance, score_variance


@dataclass(frozen=True)
class Contribution:
    indicator_id: str
    weight: float  # group global weight P_i
    value: float  # ECDF-normalized measurement F(x_i)
    product: float


@dataclass(frozen=True)
class ProjectScore:
    project_id: str
    score: float
    sigma: float
    contributions: tuple[Contribution, ...]


@dataclass(frozen=True)
class CohortResult:
    scores: tuple[ProjectScore, ...]  # ranked, best first
    group_weights: GlobalWeights
    per_expert_weights: dict[str, np.ndarray]
    consistency: dict[str, dict[str, ConsistencyReport]]
    rejected: dict[str, list[str]]  # project_id -> missing indicator ids
    warnings: tuple[str, ...] = ()

    def histogram(self, bins: int = 20) -> tuple[np.ndarray, np.ndarray]:
        """Binned score counts over [0, 1] for external plotting."""
        counts, edges = np.histogram(
            [s.score for s in self.scores], bins=bins, range=(0.0, 1.0)
        )
        return edges, counts


def score_project(
    p_group: np.ndarray, normalized: np.ndarray, indicator_ids: list[str],
    project_id: str = "", sigma: float = 0.0,
) -> ProjectScore:
    """Weighted sum of normalized values; the contribution breakdown sums to
    the score exactly."""
    p = np.asarray(p_group, dtype=float)
    f = np.asarray(normalized, dtype=float)
    if p.size != f.size or p.size != len(indicator_ids):
        raise ValidationError("weights, values and indicator ids must have equal length")
    if np.any((f < 0) | (f > 1)):
        raise ValidationError("normalized values must lie in [0, 1]")
    products = p * f
    contributions = tuple(
        Contribution(iid, float(pi), float(fi), float(pr))
        for iid, pi, fi, pr in zip(indicator_ids, p, f, products)
    )
    return ProjectScore(project_id, float(products.sum()), sigma, contributions)


def group_pipeline(
    hierarchy: Hierarchy, judgments: list[ExpertJudgment]
) -> tuple[GlobalWeights, dict[str, np.ndarray]]:
    """Per-expert global weights, aggregated group weights and variances."""
    if not judgments:
        raise ValidationError("need at least one expert judgment")
    per_expert_p: dict[str, np.ndarray] = {}
    per_expert_var = []
    for j in judgments:
        j.check_against(hierarchy)
        v = criteria_priorities(j)
        locals_ = {
            c.id: indicator_local_priorities(j, hierarchy, c.id) for c in hierarchy.criteria
        }
        w_matrix = assemble_weight_matrix(hierarchy, locals_)
        per_expert_p[j.expert_id] = expert_global_weights(v, w_matrix)
        per_expert_var.append(expert_variance_bundle(hierarchy, j).var_p)
    p_list = list(per_expert_p.values())
    p_group = group_aggregate(p_list)
    var_group = group_variance(p_list, per_expert_var, p_group)
    return GlobalWeights(p_group, var_group, "group"), per_expert_p


def cohort_consistency(
    hierarchy: Hierarchy, judgments: list[ExpertJudgment],
    ri_samples: int = 10_000, seed: int = 0,
) -> dict[str, dict[str, ConsistencyReport]]:
    """Consistency report per expert and per matrix ('criteria' plus one per
    multi-indicator criterion)."""
    out: dict[str, dict[str, ConsistencyReport]] = {}
    for j in judgments:
        reports = {"criteria": consistency_report(j.criteria_matrix, ri_samples, seed)}
        for c in hierarchy.criteria:
            m = j.indicator_matrices.get(c.id)
            if m is not None:
                reports[c.id] = consistency_report(m, ri_samples, seed)
        out[j.expert_id] = reports
    return out


def score_cohort(
    hierarchy: Hierarchy,
    judgments: list[ExpertJudgment],
    measurements,
    convention: str = STANDARD,
    ri_samples: int = 10_000,
    seed: int = 0,
) -> CohortResult:
    """Full pipeline over a project cohort.

    Projects with missing measurements are rejected with per-indicator
    diagnostics; ECDFs are fitted over the accepted projects only. Output is
    sorted by descending score with ties broken by project id.
    """
    indicator_ids = hierarchy.indicator_ids()
    directions = hierarchy.directions()
    values = np.asarray(measurements.values, dtype=float)
    project_ids = list(measurements.project_ids)
    if values.shape != (len(project_ids), len(indicator_ids)):
        raise ValidationError(
            f"measurement table shape {values.shape} does not match "
            f"{len(project_ids)} projects x {len(indicator_ids)} indicators"
        )

    rejected: dict[str, list[str]] = {}
    keep = []
    for row, pid in enumerate(project_ids):
        missing = [indicator_ids[c] for c in np.nonzero(~np.isfinite(values[row]))[0]]
        if missing:
            rejected[pid] = missing
        else:
            keep.append(row)
    if not keep:
        raise ValidationError("no project has a complete measurement row", sorted(rejected))
    kept_values = values[keep]
    kept_ids = [project_ids[r] for r in keep]

    warnings = []
    if len(keep) == 1:
        warnings.append("single-project cohort: every ECDF is degenerate")

    f = np.empty_like(kept_values)
    for col, iid in enumerate(indicator_ids):
        e = fit_ecdf(kept_values[:, col], convention)
        if e.tie_warning:
            warnings.append(f"indicator {iid!r}: heavy ties, mapped values far from uniform")
        for row in range(len(keep)):
            f[row, col] = normalize_measurement(e, kept_values[row, col], directions[col])

    group, per_expert_p = group_pipeline(hierarchy, judgments)
    consistency = cohort_consistency(hierarchy, judgments, ri_samples, seed)

    scored = [
        score_project(
            group.values, f[row], indicator_ids, project_id=pid,
            sigma=float(np.sqrt(score_variance(group.variances, f[row]))),
        )
        for row, pid in enumerate(kept_ids)
    ]
    scored.sort(key=lambda s: (-s.score, s.project_id))
    return CohortResult(
        scores=tuple(scored),
        group_weights=group,
        per_expert_weights=per_expert_p,
        consistency=consistency,
        rejected=rejected,
        warnings=tuple(warnings),
    )

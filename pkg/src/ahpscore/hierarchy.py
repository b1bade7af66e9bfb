"""Criteria/indicator hierarchy, per-expert priorities and group aggregation.

The hierarchy has K >= 2 criteria, each owning an ordered list of directed
indicators. Each expert supplies one K x K criteria matrix and one local
matrix per criterion (criteria with a single indicator need no matrix). Local
priorities combine into a block weight matrix W; global indicator weights are
P = v^T W, aggregated over experts by a normalized component-wise geometric
mean (aggregation of individual priorities).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .matrices import PairwiseMatrix, PriorityVector, geometric_mean_priorities

BENEFIT = "benefit"
COST = "cost"


@dataclass(frozen=True)
class Indicator:
    id: str
    name: str
    direction: str  # "benefit" or "cost"
    numerator: str = ""
    denominator: str = ""

    def __post_init__(self):
        if self.direction not in (BENEFIT, COST):
            raise ValidationError(
                f"indicator {self.id!r}: direction must be 'benefit' or 'cost', "
                f"got {self.direction!r}"
            )


@dataclass(frozen=True)
class Criterion:
    id: str
    name: str


class Hierarchy:
    """Ordered criteria, each owning an ordered list of indicators."""

    def __init__(self, criteria: list[Criterion], indicators: dict[str, list[Indicator]]):
        if len(criteria) < 2:
            raise ValidationError(f"need at least 2 criteria, got {len(criteria)}")
        seen_c = set()
        for c in criteria:
            if c.id in seen_c:
                raise ValidationError(f"duplicate criterion id {c.id!r}")
            seen_c.add(c.id)
        if set(indicators) != seen_c:
            raise ValidationError("indicator groups do not match criterion ids")
        seen_i = set()
        for c in criteria:
            if not indicators[c.id]:
                raise ValidationError(f"criterion {c.id!r} has no indicators")
            for ind in indicators[c.id]:
                if ind.id in seen_i:
                    raise ValidationError(f"duplicate indicator id {ind.id!r}")
                seen_i.add(ind.id)
        self.criteria = tuple(criteria)
        self.indicators = {c.id: tuple(indicators[c.id]) for c in criteria}

    @property
    def k(self) -> int:
        return len(self.criteria)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(self.indicators[c.id]) for c in self.criteria)

    @property
    def n_indicators(self) -> int:
        return sum(self.sizes)

    def all_indicators(self) -> list[Indicator]:
        return [ind for c in self.criteria for ind in self.indicators[c.id]]

    def indicator_ids(self) -> list[str]:
        return [ind.id for ind in self.all_indicators()]

    def directions(self) -> list[str]:
        return [ind.direction for ind in self.all_indicators()]


@dataclass
class ExpertJudgment:
    """One expert's criteria matrix plus one local matrix per criterion.

    Criteria with a single indicator carry no matrix (their local priority
    is trivially 1).
    """

    expert_id: str
    criteria_matrix: PairwiseMatrix
    indicator_matrices: dict[str, PairwiseMatrix] = field(default_factory=dict)

    def check_against(self, hierarchy: Hierarchy):
        problems = []
        if self.criteria_matrix.n != hierarchy.k:
            problems.append(
                f"criteria matrix is {self.criteria_matrix.n}x{self.criteria_matrix.n}, "
                f"hierarchy has {hierarchy.k} criteria"
            )
        for c in hierarchy.criteria:
            m_c = len(hierarchy.indicators[c.id])
            mat = self.indicator_matrices.get(c.id)
            if m_c == 1:
                if mat is not None:
                    problems.append(f"criterion {c.id!r} has one indicator, no matrix expected")
                continue
            if mat is None:
                problems.append(f"missing indicator matrix for criterion {c.id!r}")
            elif mat.n != m_c:
                problems.append(
                    f"indicator matrix for {c.id!r} is {mat.n}x{mat.n}, expected {m_c}x{m_c}"
                )
        if problems:
            raise ValidationError(
                f"expert {self.expert_id!r} does not match the hierarchy", problems
            )


@dataclass(frozen=True)
class GlobalWeights:
    """Global indicator priority vector with propagated variances."""

    values: np.ndarray
    variances: np.ndarray
    level: str  # "expert" or "group"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        s = np.asarray(self.variances, dtype=float)
        v.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "variances", s)
        if np.any(v <= 0):
            raise ValidationError("global weights must be positive")
        if abs(v.sum() - 1.0) > 1e-12:
            raise ValidationError(f"global weights sum to {v.sum()}, expected 1")
        if np.any(s < 0):
            raise ValidationError("variances must be non-negative")


def criteria_priorities(judgment: ExpertJudgment) -> PriorityVector:
    """Sum-normalized row geometric means of the criteria matrix."""
    return geometric_mean_priorities(judgment.criteria_matrix, "sum")


def indicator_local_priorities(
    judgment: ExpertJudgment, hierarchy: Hierarchy, criterion_id: str
) -> PriorityVector:
    """Sum-normalized local priorities for one criterion's indicators."""
    m_c = len(hierarchy.indicators[criterion_id])
    if m_c == 1:
        return PriorityVector(np.array([1.0]), "sum")
    return geometric_mean_priorities(judgment.indicator_matrices[criterion_id], "sum")


def assemble_weight_matrix(hierarchy: Hierarchy, locals_: dict[str, PriorityVector]) -> np.ndarray:
    """Block layout W (K x N_ind): row c holds w^(c) in its criterion's column
    span, zeros elsewhere. Every row sums to 1."""
    k, n_ind = hierarchy.k, hierarchy.n_indicators
    w = np.zeros((k, n_ind))
    col = 0
    for row, c in enumerate(hierarchy.criteria):
        m_c = len(hierarchy.indicators[c.id])
        local = locals_[c.id]
        if len(local) != m_c:
            raise ValidationError(
                f"local priorities for {c.id!r} have length {len(local)}, expected {m_c}"
            )
        w[row, col : col + m_c] = local.weights
        col += m_c
    return w


def expert_global_weights(v: PriorityVector, w_matrix: np.ndarray) -> np.ndarray:
    """Global indicator weights P_i = sum_j v_j W_ji; sums to 1."""
    if len(v) != w_matrix.shape[0]:
        raise ValidationError("criteria vector length does not match weight matrix rows")
    return v.weights @ w_matrix


def group_aggregate(per_expert: list[np.ndarray]) -> np.ndarray:
    """Component-wise geometric mean over experts, renormalized to unit sum."""
    if not per_expert:
        raise ValidationError("need at least one expert")
    stacked = np.asarray(per_expert, dtype=float)
    if stacked.ndim != 2:
        raise ValidationError("expert weight vectors must have matching lengths")
    if np.any(stacked <= 0):
        raise ValidationError("geometric mean undefined for non-positive components")
    if stacked.shape[0] == 1:
        g = stacked[0]
    else:
        # column-wise sort makes the reduction order canonical, so permuting
        # the expert list yields a bit-identical result
        g = np.exp(np.log(np.sort(stacked, axis=0)).mean(axis=0))
    s = g.sum()
    return g if s == 1.0 else g / s

"""Group-AHP scoring engine for R&D project portfolios."""

from .ecdf import FittedEcdf, fit_ecdf, normalize_measurement, uniformity_diagnostic
from .errors import AhpError, ConvergenceError, ValidationError
from .hierarchy import (
    Criterion,
    ExpertJudgment,
    GlobalWeights,
    Hierarchy,
    Indicator,
    criteria_priorities,
    group_aggregate,
)
from .matrices import (
    ConsistencyReport,
    PairwiseMatrix,
    PriorityVector,
    consistency_index,
    consistency_ratio,
    consistency_report,
    gci,
    geometric_mean_priorities,
    lls_objective,
    principal_eigenvalue,
    random_index,
)
from .scoring import CohortResult, ProjectScore, score_cohort, score_project
from .uncertainty import monte_carlo_pipeline_variance, score_variance

__version__ = "0.1.0"

__all__ = [
    "AhpError",
    "CohortResult",
    "ConsistencyReport",
    "ConvergenceError",
    "Criterion",
    "ExpertJudgment",
    "FittedEcdf",
    "GlobalWeights",
    "Hierarchy",
    "Indicator",
    "PairwiseMatrix",
    "PriorityVector",
    "ProjectScore",
    "ValidationError",
    "consistency_index",
    "consistency_ratio",
    "consistency_report",
    "criteria_priorities",
    "fit_ecdf",
    "gci",
    "geometric_mean_priorities",
    "group_aggregate",
    "lls_objective",
    "monte_carlo_pipeline_variance",
    "normalize_measurement",
    "principal_eigenvalue",
    "random_index",
    "score_cohort",
    "score_project",
    "score_variance",
    "uniformity_diagnostic",
]

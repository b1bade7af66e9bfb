"""Bundled example hierarchy and seeded synthetic instance generators.

The example hierarchy covers four R&D evaluation perspectives (internal
business, innovation & learning, financial, networks & alliances) with
5 + 6 + 5 + 4 = 20 ratio indicators built from project raw data. Synthetic
expert judgments are generated as consistent weight-ratio matrices perturbed
by reciprocal log-normal noise; synthetic measurements are log-normal draws
per indicator. Everything is deterministic given the seed.
"""

from __future__ import annotations

import numpy as np

from .dataio import ProjectMeasurements
from .hierarchy import Criterion, ExpertJudgment, Hierarchy, Indicator
from .matrices import PairwiseMatrix


def example_hierarchy() -> Hierarchy:
    """Four-perspective, 20-indicator R&D evaluation hierarchy."""
    def ind(iid, num, den, direction="benefit"):
        name = f"{num} / {den}" if den else num
        return Indicator(iid, name, direction, numerator=num, denominator=den)

    criteria = [
        Criterion("IB", "Internal Business"),
        Criterion("IL", "Innovation and Learning"),
        Criterion("F", "Financial"),
        Criterion("NA", "Networks and Alliances"),
    ]
    indicators = {
        "IB": [
            ind("ib_findings_cost", "Number of findings", "Cost of the project"),
            ind("ib_people_duration", "Number of people in the project", "Project duration"),
            ind("ib_grant_expenses", "Grant eligible expenses", ""),
            ind("ib_time_people", "Time spent on the project", "Number of people involved"),
            ind("ib_time_activities", "Time spent on the project", "Number of activities"),
        ],
        "IL": [
            ind("il_papers_people", "Number of papers", "Number of people in the project"),
            ind("il_books_people", "Number of books", "Number of people in the project"),
            ind("il_patents_cost", "Number of patents", "Total cost of the project"),
            ind("il_findings_duration", "Number of findings", "Duration of the project"),
            ind("il_papers_cost", "Number of papers", "Total cost of the project"),
            ind("il_findings_time", "Number of findings", "Time spent on the project"),
        ],
        "F": [
            ind("f_team_cost_share", "Total cost of the team", "Total cost of the project"),
            ind(
                "f_suppliers_cost_share",
                "Total cost of the suppliers",
                "Total cost of the project",
                direction="cost",
            ),
            ind(
                "f_equipment_cost_share",
                "Total cost of equipment",
                "Total cost of the project",
                direction="cost",
            ),
            ind("f_grant_share", "Grant eligible expenses", "Total cost of the project"),
            ind("f_time_cost", "Time spent on the project", "Total cost of the project"),
        ],
        "NA": [
            ind("na_partners", "Number of partners", ""),
            ind("na_partners_time", "Number of partners", "Time spent on the project"),
            ind("na_activities_suppliers", "Number of project activities", "Total cost of suppliers"),
            ind("na_patents_suppliers", "Number of patents", "Number of suppliers"),
        ],
    }
    return Hierarchy(criteria, indicators)


def noisy_consistent_matrix(
    rng: np.random.Generator, n: int, noise_sigma: float, reciprocal: bool = True
) -> PairwiseMatrix:
    """Weight-ratio matrix perturbed by log-normal noise.

    With ``reciprocal`` the upper triangle is perturbed and mirrored exactly;
    otherwise every off-diagonal entry gets independent noise.
    """
    w = np.exp(rng.normal(0.0, 0.6, size=n))
    a = np.outer(w, 1.0 / w)
    logs = np.log(a)
    if reciprocal:
        noise = np.zeros((n, n))
        iu, ju = np.triu_indices(n, k=1)
        draws = rng.normal(0.0, noise_sigma, size=iu.size)
        noise[iu, ju] = draws
        noise[ju, iu] = -draws
    else:
        noise = rng.normal(0.0, noise_sigma, size=(n, n))
        np.fill_diagonal(noise, 0.0)
    out = np.exp(logs + noise)
    np.fill_diagonal(out, 1.0)
    return PairwiseMatrix(out)


def synthetic_judgments(
    hierarchy: Hierarchy,
    n_experts: int,
    noise_sigma: float = 0.1,
    seed: int = 0,
    reciprocal: bool = True,
) -> list[ExpertJudgment]:
    rng = np.random.default_rng((seed, 101))
    judgments = []
    for k in range(n_experts):
        criteria = noisy_consistent_matrix(rng, hierarchy.k, noise_sigma, reciprocal)
        mats = {}
        for c in hierarchy.criteria:
            m_c = len(hierarchy.indicators[c.id])
            if m_c >= 2:
                mats[c.id] = noisy_consistent_matrix(rng, m_c, noise_sigma, reciprocal)
        judgments.append(ExpertJudgment(f"expert-{k + 1}", criteria, mats))
    return judgments


def consistent_judgments(hierarchy: Hierarchy, n_experts: int) -> list[ExpertJudgment]:
    """Fully consistent all-ones judgments (uniform priorities, zero variance)."""
    judgments = []
    for k in range(n_experts):
        mats = {
            c.id: PairwiseMatrix(np.ones((m, m)))
            for c, m in zip(hierarchy.criteria, hierarchy.sizes)
            if m >= 2
        }
        judgments.append(
            ExpertJudgment(
                f"expert-{k + 1}", PairwiseMatrix(np.ones((hierarchy.k, hierarchy.k))), mats
            )
        )
    return judgments


def synthetic_measurements(
    hierarchy: Hierarchy, n_projects: int, seed: int = 0
) -> ProjectMeasurements:
    rng = np.random.default_rng((seed, 202))
    n_ind = hierarchy.n_indicators
    scales = rng.uniform(0.5, 50.0, size=n_ind)
    values = np.exp(rng.normal(0.0, 0.8, size=(n_projects, n_ind))) * scales
    width = len(str(n_projects))
    return ProjectMeasurements(
        project_ids=[f"project-{k + 1:0{width}d}" for k in range(n_projects)],
        indicator_ids=hierarchy.indicator_ids(),
        values=values,
    )


def desk_instance(
    noise_sigma: float = 0.1, n_experts: int = 5, n_projects: int = 34, seed: int = 0
):
    """The reference-shaped instance: 4 criteria, (5, 6, 5, 4) indicators,
    5 experts and 34 projects by default."""
    h = example_hierarchy()
    return (
        h,
        synthetic_judgments(h, n_experts, noise_sigma, seed),
        synthetic_measurements(h, n_projects, seed),
    )

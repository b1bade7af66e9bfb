import numpy as np
import pytest

from ahpscore.dataio import ProjectMeasurements
from ahpscore.errors import ValidationError
from ahpscore.fixtures import (
    consistent_judgments,
    desk_instance,
    example_hierarchy,
    synthetic_judgments,
    synthetic_measurements,
)
from ahpscore.scoring import score_cohort, score_project


class TestScoreProject:
    def test_single_indicator_identity(self):
        s = score_project(np.array([1.0]), np.array([0.7]), ["x"], "p")
        assert s.score == pytest.approx(0.7)

    def test_upper_bound_attained(self):
        s = score_project(np.full(4, 0.25), np.ones(4), list("abcd"), "p")
        assert s.score == pytest.approx(1.0, abs=1e-15)

    def test_uniform_weights(self):
        s = score_project(np.full(4, 0.25), np.array([0.2, 0.4, 0.6, 0.8]), list("abcd"), "p")
        assert s.score == pytest.approx(0.5)

    def test_contributions_sum_to_score(self):
        rng = np.random.default_rng(0)
        p = rng.dirichlet(np.ones(8))
        f = rng.uniform(0, 1, 8)
        s = score_project(p, f, [f"i{k}" for k in range(8)], "p")
        assert s.score == pytest.approx(sum(c.product for c in s.contributions), abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            score_project(np.array([1.0]), np.array([0.5, 0.5]), ["a", "b"], "p")

    def test_out_of_range_value(self):
        with pytest.raises(ValidationError):
            score_project(np.array([1.0]), np.array([1.5]), ["a"], "p")


class TestScoreCohort:
    def test_desk_instance_shape(self):
        h, js, ms = desk_instance()
        res = score_cohort(h, js, ms)
        assert len(res.scores) == 34
        assert all(0.0 <= s.score <= 1.0 for s in res.scores)
        assert all(s.sigma >= 0 for s in res.scores)
        scores = [s.score for s in res.scores]
        assert scores == sorted(scores, reverse=True)
        edges, counts = res.histogram()
        assert len(edges) == 21 and counts.sum() == 34

    def test_consistent_judgments_zero_sigma(self):
        h = example_hierarchy()
        js = consistent_judgments(h, 3)
        ms = synthetic_measurements(h, 10, seed=1)
        res = score_cohort(h, js, ms)
        assert all(s.sigma == 0.0 for s in res.scores)

    def test_single_project_degenerate(self):
        h = example_hierarchy()
        js = consistent_judgments(h, 1)
        ms = synthetic_measurements(h, 1, seed=0)
        res = score_cohort(h, js, ms)
        assert len(res.scores) == 1
        assert any("degenerate" in w for w in res.warnings)
        # benefit indicators map to 1, cost indicators to 0
        for c in res.scores[0].contributions:
            assert c.value in (0.0, 1.0)

    def test_dominating_project_ranks_first(self):
        h = example_hierarchy()
        js = synthetic_judgments(h, 2, 0.1, seed=3)
        base = synthetic_measurements(h, 5, seed=3)
        values = base.values.copy()
        dirs = h.directions()
        for col, d in enumerate(dirs):
            values[0, col] = values[:, col].max() * 2 if d == "benefit" else values[:, col].min() / 2
        ms = ProjectMeasurements(base.project_ids, base.indicator_ids, values)
        res = score_cohort(h, js, ms)
        assert res.scores[0].project_id == base.project_ids[0]

    def test_benefit_monotonicity(self):
        h, js, ms = desk_instance(n_projects=12)
        res1 = score_cohort(h, js, ms)
        # bump one benefit indicator of one project
        iid = h.indicator_ids()[2]
        assert h.directions()[2] == "benefit"
        values = ms.values.copy()
        values[4, 2] = values[:, 2].max() * 3
        res2 = score_cohort(h, js, ProjectMeasurements(ms.project_ids, ms.indicator_ids, values))
        pid = ms.project_ids[4]
        s1 = next(s.score for s in res1.scores if s.project_id == pid)
        s2 = next(s.score for s in res2.scores if s.project_id == pid)
        assert s2 >= s1

    def test_input_order_invariance(self):
        h, js, ms = desk_instance(n_projects=10)
        rng = np.random.default_rng(4)
        perm = rng.permutation(10)
        shuffled = ProjectMeasurements(
            [ms.project_ids[i] for i in perm], ms.indicator_ids, ms.values[perm]
        )
        a = score_cohort(h, js, ms)
        b = score_cohort(h, js, shuffled)
        assert [s.project_id for s in a.scores] == [s.project_id for s in b.scores]
        np.testing.assert_array_equal([s.score for s in a.scores], [s.score for s in b.scores])

    def test_missing_measurement_rejects_project(self):
        h, js, ms = desk_instance(n_projects=6)
        values = ms.values.copy()
        values[2, 5] = np.nan
        res = score_cohort(h, js, ProjectMeasurements(ms.project_ids, ms.indicator_ids, values))
        assert len(res.scores) == 5
        assert ms.project_ids[2] in res.rejected
        assert res.rejected[ms.project_ids[2]] == [h.indicator_ids()[5]]

    def test_consistency_reports_present(self):
        h, js, ms = desk_instance(n_experts=2, n_projects=5)
        res = score_cohort(h, js, ms)
        assert set(res.consistency) == {j.expert_id for j in js}
        for reports in res.consistency.values():
            assert set(reports) == {"criteria", "IB", "IL", "F", "NA"}

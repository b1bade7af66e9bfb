import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahpscore.ecdf import (
    HAZEN,
    STANDARD,
    fit_ecdf,
    normalize_measurement,
    uniformity_diagnostic,
)
from ahpscore.errors import ValidationError

finite_floats = st.floats(-1e6, 1e6, allow_nan=False)


class TestFit:
    def test_standard_counts(self):
        e = fit_ecdf([10, 20, 30])
        assert e.evaluate(20) == pytest.approx(2 / 3)
        assert e.evaluate(5) == 0.0
        assert e.evaluate(30) == 1.0
        assert e.evaluate(31) == 1.0

    def test_all_ties(self):
        e = fit_ecdf([7, 7, 7])
        assert e.evaluate(7) == 1.0
        assert e.tie_warning

    def test_hazen_midranks(self):
        e = fit_ecdf([10, 20, 30], HAZEN)
        # distinct values at ranks 1..3: (r - 0.5) / 3
        assert e.evaluate(10) == pytest.approx(0.5 / 3)
        assert e.evaluate(20) == pytest.approx(1.5 / 3)
        assert e.evaluate(30) == pytest.approx(2.5 / 3)
        # between atoms and outside the range
        assert e.evaluate(15) == pytest.approx(1 / 3)
        assert e.evaluate(0) == 0.0
        assert e.evaluate(99) == 1.0

    def test_hazen_tie_share_midrank(self):
        e = fit_ecdf([1, 2, 2, 3], HAZEN)
        # ties at ranks 2,3 share midrank 2.5 -> (2.5 - 0.5)/4
        assert e.evaluate(2) == pytest.approx(0.5)

    def test_rejects_bad_samples(self):
        with pytest.raises(ValidationError):
            fit_ecdf([])
        with pytest.raises(ValidationError):
            fit_ecdf([1.0, np.nan])
        with pytest.raises(ValidationError):
            fit_ecdf([1.0], "spline")


class TestNormalize:
    def test_benefit_and_cost(self):
        e = fit_ecdf([10, 20, 30])
        assert normalize_measurement(e, 20, "benefit") == pytest.approx(2 / 3)
        assert normalize_measurement(e, 20, "cost") == pytest.approx(1 / 3)
        assert normalize_measurement(e, 5, "benefit") == 0.0

    @given(st.lists(finite_floats, min_size=1, max_size=30), finite_floats)
    @settings(max_examples=100, deadline=None)
    def test_direction_complement(self, sample, x):
        e = fit_ecdf(sample)
        b = normalize_measurement(e, x, "benefit")
        c = normalize_measurement(e, x, "cost")
        assert b + c == pytest.approx(1.0, abs=1e-12)
        assert 0.0 <= b <= 1.0

    @given(
        st.lists(finite_floats, min_size=1, max_size=30),
        finite_floats,
        finite_floats,
        st.sampled_from([STANDARD, HAZEN]),
    )
    @settings(max_examples=100, deadline=None)
    def test_monotone(self, sample, x, y, convention):
        e = fit_ecdf(sample, convention)
        lo, hi = min(x, y), max(x, y)
        assert e.evaluate(lo) <= e.evaluate(hi)


class TestUniformity:
    def test_distinct_values_exact_grid(self):
        d = uniformity_diagnostic([3.0, 1.0, 4.0, 2.0])
        assert sorted(d.mapped) == [0.25, 0.5, 0.75, 1.0]
        assert d.mean == pytest.approx(0.625)
        assert not d.degenerate

    def test_two_values(self):
        assert uniformity_diagnostic([5.0, 9.0]).mean == pytest.approx(0.75)

    def test_constant_sample_degenerate(self):
        d = uniformity_diagnostic([2.0, 2.0, 2.0])
        assert d.degenerate
        assert np.all(d.mapped == 1.0)

    def test_plug_in_exactness(self):
        rng = np.random.default_rng(1)
        for n in (2, 5, 17):
            sample = rng.permutation(np.arange(n, dtype=float))
            mapped = np.sort(uniformity_diagnostic(sample).mapped)
            np.testing.assert_allclose(mapped, np.arange(1, n + 1) / n, atol=1e-15)

    def test_needs_two(self):
        with pytest.raises(ValidationError):
            uniformity_diagnostic([1.0])

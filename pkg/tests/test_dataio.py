import numpy as np
import pytest

from ahpscore.dataio import (
    dumps,
    hierarchy_from_doc,
    hierarchy_to_doc,
    judgments_from_doc,
    judgments_to_doc,
    load_hierarchy,
    load_judgments,
    load_measurements,
    load_results,
    measurements_from_csv,
    measurements_to_csv,
    parse_entry,
    parse_matrix,
    results_to_doc,
    round12,
    save_results,
    write_json,
)
from ahpscore.errors import ValidationError
from ahpscore.fixtures import desk_instance, example_hierarchy, synthetic_judgments
from ahpscore.scoring import score_cohort


class TestParsing:
    def test_numbers(self):
        assert parse_entry(3) == 3.0
        assert parse_entry(0.5) == 0.5

    def test_fraction_literals_exact(self):
        assert parse_entry("1/7") == 1 / 7
        assert parse_entry(" 3/2 ") == 1.5
        assert parse_entry("5") == 5.0

    def test_bad_entries(self):
        for raw in ("", "x", "1/0", None, True, [1]):
            with pytest.raises(ValidationError):
                parse_entry(raw)

    def test_parse_matrix(self):
        got = parse_matrix([[1, "1/2"], [2, 1]])
        np.testing.assert_array_equal(got, [[1.0, 0.5], [2.0, 1.0]])
        with pytest.raises(ValidationError):
            parse_matrix("not a matrix")


class TestRound12:
    def test_idempotent(self):
        x = 0.123456789012345
        assert round12(round12(x)) == round12(x)

    def test_precision(self):
        assert round12(1 / 3) == 0.333333333333
        assert round12(1.0) == 1.0


class TestHierarchyDocs:
    def test_round_trip(self):
        h = example_hierarchy()
        h2 = hierarchy_from_doc(hierarchy_to_doc(h))
        assert h2.indicator_ids() == h.indicator_ids()
        assert h2.directions() == h.directions()
        assert [c.id for c in h2.criteria] == [c.id for c in h.criteria]

    def test_file_round_trip(self, tmp_path):
        h = example_hierarchy()
        p = tmp_path / "h.json"
        write_json(p, hierarchy_to_doc(h))
        assert load_hierarchy(p).indicator_ids() == h.indicator_ids()

    def test_schema_checked(self):
        with pytest.raises(ValidationError):
            hierarchy_from_doc({"schema": "other/9", "kind": "hierarchy"})
        with pytest.raises(ValidationError):
            hierarchy_from_doc({"schema": "ahp-spec/1", "kind": "results"})

    def test_bad_indicator_reported(self):
        doc = hierarchy_to_doc(example_hierarchy())
        doc["criteria"][0]["indicators"][0]["direction"] = "sideways"
        with pytest.raises(ValidationError) as exc:
            hierarchy_from_doc(doc)
        assert exc.value.diagnostics


class TestJudgmentDocs:
    def test_round_trip(self):
        h = example_hierarchy()
        js = synthetic_judgments(h, 3, 0.1, seed=0)
        res = judgments_from_doc(judgments_to_doc(js), h)
        assert not res.rejected
        assert [j.expert_id for j in res.experts] == [j.expert_id for j in js]
        for a, b in zip(res.experts, js):
            np.testing.assert_array_equal(a.criteria_matrix.entries, b.criteria_matrix.entries)

    def test_fraction_cells(self):
        h = example_hierarchy()
        doc = judgments_to_doc(synthetic_judgments(h, 1, 0.0, seed=0))
        doc["experts"][0]["criteria_matrix"] = [
            [1, "1/3", 2, 1],
            [3, 1, "1/2", 1],
            ["1/2", 2, 1, 1],
            [1, 1, 1, 1],
        ]
        res = judgments_from_doc(doc, h)
        assert not res.rejected
        assert res.experts[0].criteria_matrix.entries[0, 1] == 1 / 3

    def test_bad_expert_rejected_others_kept(self):
        h = example_hierarchy()
        doc = judgments_to_doc(synthetic_judgments(h, 2, 0.1, seed=1))
        doc["experts"][0]["criteria_matrix"][0][1] = -4
        res = judgments_from_doc(doc, h)
        assert len(res.experts) == 1
        assert list(res.rejected) == [doc["experts"][0]["expert_id"]]

    def test_non_reciprocal_warned_not_rejected(self):
        h = example_hierarchy()
        doc = judgments_to_doc(synthetic_judgments(h, 1, 0.0, seed=0))
        doc["experts"][0]["criteria_matrix"][0][1] = 4
        doc["experts"][0]["criteria_matrix"][1][0] = 4
        res = judgments_from_doc(doc, h)
        assert len(res.experts) == 1
        assert any("reciprocal" in w for w in res.warnings)

    def test_file_round_trip(self, tmp_path):
        h = example_hierarchy()
        js = synthetic_judgments(h, 2, 0.1, seed=2)
        p = tmp_path / "j.json"
        write_json(p, judgments_to_doc(js))
        assert len(load_judgments(p, h).experts) == 2


class TestMeasurementsCsv:
    def test_round_trip(self):
        h, _, ms = desk_instance(n_projects=5)
        again = measurements_from_csv(measurements_to_csv(ms), h)
        assert again.project_ids == ms.project_ids
        np.testing.assert_array_equal(again.values, ms.values)

    def test_column_order_free(self):
        h = example_hierarchy()
        ids = h.indicator_ids()
        header = "project_id," + ",".join(reversed(ids))
        row = "p1," + ",".join(str(i + 1) for i in range(len(ids)))
        ms = measurements_from_csv(header + "\n" + row + "\n", h)
        # values come back in hierarchy order regardless of CSV column order
        np.testing.assert_array_equal(ms.values[0], np.arange(len(ids), 0, -1))

    def test_missing_and_bad_cells(self):
        h = example_hierarchy()
        ids = h.indicator_ids()
        header = "project_id," + ",".join(ids)
        cells = ["1"] * len(ids)
        cells[3] = ""
        cells[7] = "oops"
        text = header + "\np1," + ",".join(cells) + "\n"
        ms = measurements_from_csv(text, h)
        assert np.isnan(ms.values[0, 3]) and np.isnan(ms.values[0, 7])
        assert len(ms.diagnostics) == 2
        assert ids[3] in ms.diagnostics[0]

    def test_unknown_column_warned(self):
        h = example_hierarchy()
        ids = h.indicator_ids()
        header = "project_id,mystery," + ",".join(ids)
        row = "p1,42," + ",".join(["1"] * len(ids))
        ms = measurements_from_csv(header + "\n" + row + "\n", h)
        assert any("mystery" in w for w in ms.warnings)
        assert ms.values.shape == (1, len(ids))

    def test_missing_indicator_column_errors(self):
        h = example_hierarchy()
        ids = h.indicator_ids()[1:]
        header = "project_id," + ",".join(ids)
        row = "p1," + ",".join(["1"] * len(ids))
        with pytest.raises(ValidationError) as exc:
            measurements_from_csv(header + "\n" + row + "\n", h)
        assert h.indicator_ids()[0] in exc.value.diagnostics

    def test_empty_inputs(self):
        h = example_hierarchy()
        with pytest.raises(ValidationError):
            measurements_from_csv("", h)
        with pytest.raises(ValidationError):
            measurements_from_csv("project_id," + ",".join(h.indicator_ids()) + "\n", h)

    def test_file_round_trip(self, tmp_path):
        h, _, ms = desk_instance(n_projects=3)
        p = tmp_path / "m.csv"
        p.write_text(measurements_to_csv(ms), encoding="utf-8")
        again = load_measurements(p, h)
        np.testing.assert_array_equal(again.values, ms.values)


class TestResultsDocs:
    def test_byte_identical_serialization(self):
        h, js, ms = desk_instance(n_projects=8)
        a = dumps(results_to_doc(score_cohort(h, js, ms)))
        b = dumps(results_to_doc(score_cohort(h, js, ms)))
        assert a == b

    def test_round_trip_equals_original(self, tmp_path):
        import json

        h, js, ms = desk_instance(n_projects=8)
        p = tmp_path / "r.json"
        doc = save_results(p, score_cohort(h, js, ms), params={"seed": 0})
        loaded = load_results(p)
        assert loaded == doc
        # re-serializing the loaded document is byte-identical
        assert dumps(loaded) == p.read_text(encoding="utf-8")
        assert json.loads(dumps(doc)) == doc

    def test_document_content(self):
        h, js, ms = desk_instance(n_experts=2, n_projects=5)
        res = score_cohort(h, js, ms)
        doc = results_to_doc(res)
        assert doc["schema"] == "ahp-spec/1" and doc["kind"] == "results"
        assert len(doc["scores"]) == 5
        assert sum(doc["histogram"]["counts"]) == 5
        assert len(doc["group_weights"]["values"]) == h.n_indicators
        for eid in doc["consistency"]:
            assert "criteria" in doc["consistency"][eid]

    def test_load_rejects_wrong_kind(self, tmp_path):
        p = tmp_path / "x.json"
        write_json(p, hierarchy_to_doc(example_hierarchy()))
        with pytest.raises(ValidationError):
            load_results(p)

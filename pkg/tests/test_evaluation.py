from __future__ import annotations

import pytest

from schemamatch import (
    GroundTruth,
    KnownPair,
    MatcherConfig,
    ablation,
    evaluate,
    evaluate_f1,
    load_ground_truth,
    time_matchers,
    topn_accuracy,
)
from schemamatch.ensemble import Suggestion
from schemamatch.evaluation import ablation_to_csv, resolve_ground_truth
from schemamatch.model import EmptyGroundTruthError, UnknownAttributeError
from helpers import noised_copy_pair, renamed_copy_pair


def sugg(source, *ranked):
    return Suggestion(source_attr=source, ranked=tuple(ranked))


class TestGroundTruth:
    def test_load(self, tmp_path):
        path = tmp_path / "truth.csv"
        path.write_text("source_attr,dest_attr\na,b\nc,d\n", encoding="utf-8")
        truth = load_ground_truth(path)
        assert truth.pairs == (("a", "b"), ("c", "d"))

    def test_duplicate_source_rejected(self):
        with pytest.raises(ValueError):
            GroundTruth((("a", "b"), ("A", "c")))

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "truth.csv"
        path.write_text("from,to\na,b\n", encoding="utf-8")
        with pytest.raises(ValueError):
            load_ground_truth(path)

    def test_unknown_attribute_names_offending_row(self, veg_source, veg_dest):
        truth = GroundTruth((("u_heightCode", "u_height_class"), ("ghost", "u_species_3")))
        with pytest.raises(UnknownAttributeError) as err:
            resolve_ground_truth(truth, veg_source, veg_dest)
        assert "row 3" in str(err.value)
        assert "ghost" in str(err.value)


class TestEvaluateF1:
    def test_all_correct(self):
        truth = GroundTruth((("a", "x"), ("b", "y")))
        suggestions = [sugg("a", ("x", 0.9)), sugg("b", ("y", 0.8))]
        scores = evaluate_f1(suggestions, truth)
        assert (scores.precision, scores.recall, scores.f1) == (1.0, 1.0, 1.0)

    def test_none_correct(self):
        truth = GroundTruth((("a", "x"),))
        scores = evaluate_f1([sugg("a", ("y", 0.9))], truth)
        assert scores.f1 == 0.0

    def test_two_of_three(self):
        truth = GroundTruth((("a", "x"), ("b", "y"), ("c", "z")))
        suggestions = [
            sugg("a", ("x", 0.9)),
            sugg("b", ("y", 0.8)),
            sugg("c", ("w", 0.7)),
        ]
        scores = evaluate_f1(suggestions, truth)
        assert scores.precision == pytest.approx(2 / 3)
        assert scores.recall == pytest.approx(2 / 3)
        assert scores.f1 == pytest.approx(2 / 3)

    def test_predictions_restricted_to_truth_sources(self):
        truth = GroundTruth((("a", "x"),))
        suggestions = [sugg("a", ("x", 0.9)), sugg("extra", ("x", 0.9))]
        scores = evaluate_f1(suggestions, truth)
        assert scores.precision == 1.0

    def test_known_pairs_count_as_predictions(self):
        truth = GroundTruth((("a", "x"), ("b", "y")))
        suggestions = [sugg("b", ("y", 0.8))]  # "a" withheld as confirmed
        scores = evaluate_f1(suggestions, truth, known=[KnownPair("a", "x")])
        assert scores.f1 == 1.0

    def test_empty_truth_rejected(self):
        with pytest.raises(EmptyGroundTruthError):
            evaluate_f1([], GroundTruth(()))


class TestTopNAccuracy:
    def test_rank_threshold(self):
        truth = GroundTruth((("a", "x"),))
        suggestions = [sugg("a", ("p", 0.9), ("q", 0.8), ("x", 0.7), ("r", 0.6))]
        assert topn_accuracy(suggestions, truth, 1) == 0.0
        assert topn_accuracy(suggestions, truth, 2) == 0.0
        assert topn_accuracy(suggestions, truth, 3) == 1.0
        assert topn_accuracy(suggestions, truth, 4) == 1.0

    def test_full_ranking_contains_every_candidate(self, veg_source, veg_dest):
        from schemamatch import rank, score_all

        truth = GroundTruth(
            (("u_heightCode", "u_height_class"), ("treesp_3", "u_species_3"))
        )
        matrix = score_all(veg_source, veg_dest, None, [], MatcherConfig())
        suggestions = rank(matrix, len(veg_dest.attributes))
        assert topn_accuracy(suggestions, truth, len(veg_dest.attributes)) == 1.0

    def test_monotone_in_n(self):
        truth = GroundTruth((("a", "x"), ("b", "y")))
        suggestions = [
            sugg("a", ("x", 0.9), ("q", 0.8)),
            sugg("b", ("q", 0.9), ("y", 0.8)),
        ]
        values = [topn_accuracy(suggestions, truth, n) for n in (1, 2, 3)]
        assert values == sorted(values)


class TestAblation:
    def test_table_shape_and_monotonicity(self):
        source, dest, truth = noised_copy_pair(n_rows=120, seed=1)
        table = ablation(source, dest, truth, MatcherConfig(seed=0))
        assert set(table) == {
            "linguistic",
            "univariate",
            "multivariate_random",
            "multivariate_known",
        }
        for by_n in table.values():
            values = [by_n[n] for n in (1, 2, 3, 4)]
            assert values == sorted(values)

    def test_linguistic_matches_direct_projection(self):
        from schemamatch import rank, score_all

        source, dest, truth = noised_copy_pair(n_rows=80, seed=2)
        table = ablation(source, dest, truth, MatcherConfig(seed=0))
        cfg = MatcherConfig(w=(0, 1, 0, 0), top_n=4)
        matrix = score_all(source, dest, None, [], cfg)
        suggestions = rank(matrix, 4)
        expected = topn_accuracy(suggestions, truth, 1)
        assert table["linguistic"][1] == pytest.approx(expected)

    def test_csv_export_shape(self):
        table = {"linguistic": {1: 0.5, 2: 0.75}}
        text = ablation_to_csv(table)
        lines = text.strip().splitlines()
        assert lines[0] == "component,top_n,accuracy"
        assert lines[1] == "linguistic,1,0.5"


class TestTimeMatchers:
    def test_enabled_components_present(self, veg_source, veg_dest):
        timings = time_matchers(veg_source, veg_dest, MatcherConfig())
        assert set(timings) == {
            "domain_knowledge",
            "linguistic",
            "univariate",
            "multivariate",
            "total",
        }
        assert timings["total"] >= max(
            v for k, v in timings.items() if k != "total"
        )

    def test_disabled_components_absent(self, veg_source, veg_dest):
        timings = time_matchers(veg_source, veg_dest, MatcherConfig(w=(0, 1, 0, 0)))
        assert set(timings) == {"linguistic", "total"}


class TestEvaluateEndToEnd:
    def test_renamed_copy_scores_perfectly(self):
        source, dest, truth = renamed_copy_pair(n_rows=300, seed=4)
        known = [KnownPair(*truth.pairs[0])]
        report = evaluate(source, dest, truth, MatcherConfig(), known=known)
        assert report.f1 == 1.0
        assert report.precision == 1.0
        assert report.recall == 1.0
        values = [report.topn_accuracy[n] for n in (1, 2, 3, 4)]
        assert values == sorted(values)

    def test_report_json_round_trips(self):
        import json

        source, dest, truth = renamed_copy_pair(n_rows=60, seed=4)
        report = evaluate(source, dest, truth, MatcherConfig())
        payload = json.loads(report.to_json())
        assert set(payload) == {
            "precision", "recall", "f1", "topn_accuracy", "timings_ms"
        }

"""Randomized property checks over the matcher invariants.

Everything is seeded so failures reproduce; the loops are the fuzzing the
scoring contracts promise (score ranges, symmetry, determinism, invariance
under transformations that must not matter).
"""

from __future__ import annotations

import random

import pytest

from schemamatch import (
    KnownPair,
    MatcherConfig,
    build_tfidf,
    dk_score,
    discretize,
    evaluate_f1,
    from_columns,
    mirror_correlation,
    mul_score,
    pearson,
    rank,
    score_all,
    sim_lev,
    sim_monge_elkan,
    sim_tfidf,
    tokenize,
    topn_accuracy,
    uni_score,
)
from schemamatch.ensemble import matrix_to_csv
from schemamatch.evaluation import GroundTruth
from schemamatch.instance_matchers import CorrelationProfile
from schemamatch.schema_matchers import RuleSet
from helpers import random_dataset, renamed_copy_pair

NAME_ALPHABET = "abcz_39 -XY"


def random_name(rng: random.Random, max_len: int = 12) -> str:
    return "".join(
        rng.choice(NAME_ALPHABET) for _ in range(rng.randint(0, max_len))
    )


class TestTokenizeProperties:
    def test_idempotent_on_joined_output(self):
        rng = random.Random(1)
        for _ in range(500):
            name = random_name(rng)
            tokens = tokenize(name)
            assert tokenize("_".join(tokens)) == tokens

    def test_nonempty_for_alphanumeric_names(self):
        rng = random.Random(2)
        for _ in range(200):
            name = random_name(rng)
            if any(c.isalnum() for c in name):
                assert tokenize(name)


class TestDiscretizeProperties:
    def test_length_nulls_and_labels(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randint(1, 40)
            bins = rng.randint(1, 8)
            values = [
                None if rng.random() < 0.2 else rng.uniform(-50, 50)
                for _ in range(n)
            ]
            if all(v is None for v in values):
                values[0] = 1.0
            attr = from_columns("t", {"x": values}).attributes[0]
            out = discretize(attr, bins)
            assert len(out.values) == len(attr.values)
            labels = {f"bin_{k}" for k in range(bins)}
            for before, after in zip(attr.values, out.values):
                if before is None:
                    assert after is None
                else:
                    assert after in labels


class TestStringSimilarityProperties:
    def test_sim_lev_symmetric_and_bounded(self):
        rng = random.Random(4)
        for _ in range(300):
            a, b = random_name(rng), random_name(rng)
            v = sim_lev(a, b)
            assert v == sim_lev(b, a)
            assert 0.0 <= v <= 1.0
            assert sim_lev(a, a) == 1.0

    def test_monge_elkan_bounded_with_identity(self):
        rng = random.Random(5)
        for _ in range(300):
            a, b = random_name(rng), random_name(rng)
            assert 0.0 <= sim_monge_elkan(a, b) <= 1.0
            if tokenize(a):
                assert sim_monge_elkan(a, a) == 1.0

    def test_tfidf_bounded_and_identity(self):
        rng = random.Random(6)
        for trial in range(40):
            n_cols = rng.randint(1, 6)
            names = {f"{random_name(rng, 8)}_{i}": [1.0] for i in range(n_cols)}
            src = from_columns("s", names)
            dst = from_columns(
                "d", {f"{random_name(rng, 8)}x{i}": [1.0] for i in range(n_cols)}
            )
            corpus = build_tfidf(src, dst)
            all_names = src.attribute_names + dst.attribute_names
            for a in all_names:
                if tokenize(a):
                    assert sim_tfidf(a, a, corpus) == 1.0
                for b in all_names:
                    assert 0.0 <= sim_tfidf(a, b, corpus) <= 1.0

    def test_dk_score_symmetric_in_pair_direction(self):
        rng = random.Random(7)
        for _ in range(200):
            patterns = [
                (random_name(rng, 6) or "x", random_name(rng, 6) or "y")
                for _ in range(rng.randint(0, 3))
            ]
            rules = RuleSet(tuple(patterns))
            a, b = random_name(rng), random_name(rng)
            assert dk_score(a, b, rules) == dk_score(b, a, rules)


class TestPearsonProperties:
    def test_affine_invariance_and_negation(self):
        rng = random.Random(8)
        for _ in range(100):
            n = rng.randint(3, 30)
            x = [rng.gauss(0, 3) for _ in range(n)]
            y = [rng.gauss(0, 3) for _ in range(n)]
            base = pearson(x, y)
            a = rng.uniform(0.1, 5.0)
            b = rng.uniform(-10, 10)
            scaled = [a * v + b for v in x]
            assert abs(pearson(scaled, y) - base) < 1e-9
            flipped = [-a * v + b for v in x]
            assert abs(pearson(flipped, y) + base) < 1e-9


class TestInstanceProperties:
    def test_uni_score_symmetric(self):
        rng = random.Random(9)
        for trial in range(30):
            ds = random_dataset("t", 4, rng.randint(3, 25), seed=trial)
            for a in ds.attributes:
                for b in ds.attributes:
                    assert uni_score(a, b, 4) == pytest.approx(
                        uni_score(b, a, 4), abs=1e-12
                    )

    def test_mirror_scores_bounded_with_unit_diagonal(self):
        rng = random.Random(10)
        for _ in range(50):
            entries = tuple(
                (f"a{i}", rng.uniform(-1, 1)) for i in range(rng.randint(1, 6))
            )
            profile = CorrelationProfile("p", entries)
            scores = mirror_correlation(profile, profile)
            for (s, d), v in scores.items():
                assert 0.0 <= v <= 1.0
                if s == d:
                    assert v == pytest.approx(1.0)

    def test_per_pivot_independence(self):
        src = random_dataset("s", 5, 40, seed=11, null_rate=0.0)
        dst = random_dataset("d", 5, 40, seed=12, null_rate=0.0)
        p1 = KnownPair(src.attributes[0].name, dst.attributes[0].name)
        p2 = KnownPair(src.attributes[1].name, dst.attributes[1].name)
        only_p1, _ = mul_score(src, dst, [p1], seed=0)
        only_p2, _ = mul_score(src, dst, [p2], seed=0)
        both, _ = mul_score(src, dst, [p1, p2], seed=0)
        for key, value in both.items():
            parts = [m[key] for m in (only_p1, only_p2) if key in m]
            assert value == pytest.approx(sum(parts) / len(parts))

    def test_renamed_copy_true_matches_hit_unit_mirror(self):
        source, dest, truth = renamed_copy_pair(n_rows=150, seed=13)
        known = [KnownPair(*truth.pairs[0])]
        scores, _ = mul_score(source, dest, known, seed=0)
        truth_map = dict(truth.pairs[1:])
        for s_attr, d_attr in truth_map.items():
            row = {d: v for (s, d), v in scores.items() if s == s_attr}
            assert row[d_attr] == pytest.approx(1.0)
            assert row[d_attr] == max(row.values())


class TestEnsembleProperties:
    def test_scores_bounded_and_final_reconstructs(self):
        rng = random.Random(14)
        for trial in range(10):
            src = random_dataset("s", rng.randint(1, 5), rng.randint(3, 20),
                                 seed=100 + trial)
            dst = random_dataset("d", rng.randint(1, 5), rng.randint(3, 20),
                                 seed=200 + trial)
            cfg = MatcherConfig(seed=trial)
            matrix = score_all(src, dst, None, [], cfg)
            assert len(matrix.pairs) == len(src.attributes) * len(dst.attributes)
            w1, w2, w3, w4 = cfg.w
            for p in matrix.pairs:
                for v in (p.dk, p.lin, p.uni, p.mul, p.final):
                    assert 0.0 <= v <= 1.0
                recomputed = w1 * p.dk + w2 * p.lin + w3 * p.uni + w4 * p.mul
                assert abs(p.final - recomputed) < 1e-9

    def test_argmax_invariant_under_weight_rescaling(self):
        src = random_dataset("s", 4, 25, seed=15, null_rate=0.0)
        dst = random_dataset("d", 4, 25, seed=16, null_rate=0.0)
        base = MatcherConfig(w=(0.1, 0.4, 0.3, 0.2))
        matrix = score_all(src, dst, None, [], base)
        # the same weights scaled by any positive constant renormalize to
        # themselves, so orderings must be reproduced exactly
        scaled = tuple(3.7 * w for w in base.w)
        renorm = tuple(w / sum(scaled) for w in scaled)
        matrix2 = score_all(src, dst, None, [], MatcherConfig(w=renorm))
        for k in (1, 2, 3, 4):
            ordering1 = [
                (s.source_attr, [d for d, _ in s.ranked]) for s in rank(matrix, k)
            ]
            ordering2 = [
                (s.source_attr, [d for d, _ in s.ranked]) for s in rank(matrix2, k)
            ]
            assert ordering1 == ordering2

    def test_rank_prefix_property(self):
        src = random_dataset("s", 4, 15, seed=17)
        dst = random_dataset("d", 6, 15, seed=18)
        matrix = score_all(src, dst, None, [], MatcherConfig())
        for k in (1, 2, 3, 4, 5):
            shorter = rank(matrix, k)
            longer = rank(matrix, k + 1)
            for a, b in zip(shorter, longer):
                assert b.ranked[: len(a.ranked)] == a.ranked

    def test_row_shuffle_invariance(self):
        source, dest, truth = renamed_copy_pair(n_rows=80, seed=19)
        cfg = MatcherConfig()
        baseline = score_all(source, dest, None, [], cfg)

        rng = random.Random(20)

        def shuffled(ds):
            order = list(range(ds.row_count))
            rng.shuffle(order)
            return from_columns(
                ds.name,
                {
                    a.name: [a.values[i] for i in order]
                    for a in ds.attributes
                },
            )

        reshuffled = score_all(shuffled(source), shuffled(dest), None, [], cfg)
        # scores are permutation-invariant up to float summation order
        for p1, p2 in zip(baseline.pairs, reshuffled.pairs):
            assert (p1.source_attr, p1.dest_attr) == (p2.source_attr, p2.dest_attr)
            for v1, v2 in zip(
                (p1.dk, p1.lin, p1.uni, p1.mul, p1.final),
                (p2.dk, p2.lin, p2.uni, p2.mul, p2.final),
            ):
                assert abs(v1 - v2) < 1e-9

        suggestions = rank(baseline, 4)
        suggestions2 = rank(reshuffled, 4)
        names1 = [(s.source_attr, [d for d, _ in s.ranked]) for s in suggestions]
        names2 = [(s.source_attr, [d for d, _ in s.ranked]) for s in suggestions2]
        assert names1 == names2
        assert evaluate_f1(suggestions, truth) == evaluate_f1(suggestions2, truth)
        for n in (1, 2, 3, 4):
            assert topn_accuracy(suggestions, truth, n) == topn_accuracy(
                suggestions2, truth, n
            )

    def test_determinism_byte_identical_exports(self):
        src = random_dataset("s", 5, 30, seed=21)
        dst = random_dataset("d", 5, 30, seed=22)
        cfg = MatcherConfig(seed=9)
        exports = {
            matrix_to_csv(score_all(src, dst, None, [], cfg)) for _ in range(3)
        }
        assert len(exports) == 1

    def test_topn_accuracy_monotone_on_random_data(self):
        src = random_dataset("s", 5, 30, seed=23, null_rate=0.0)
        dst = random_dataset("d", 5, 30, seed=24, null_rate=0.0)
        truth = GroundTruth(
            tuple(
                (s.name, d.name)
                for s, d in zip(src.attributes, dst.attributes)
            )
        )
        matrix = score_all(src, dst, None, [], MatcherConfig())
        suggestions = rank(matrix, 5)
        values = [topn_accuracy(suggestions, truth, n) for n in range(1, 6)]
        assert values == sorted(values)

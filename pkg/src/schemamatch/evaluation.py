"""Evaluation against ground truth: F1, Top-N accuracy, ablation, timings.

Predictions are Top-1 suggestions restricted to source attributes that
appear in the ground truth; confirmed known pairs count as predictions for
their source attributes (their attributes are withheld from suggestions).
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .ensemble import Suggestion, rank, score_all
from .instance_matchers import (
    mul_score,
    uni_from_profiles,
    uni_profile,
)
from .model import (
    Dataset,
    EmptyGroundTruthError,
    KnownPair,
    MatcherConfig,
    Origin,
    UnknownAttributeError,
)
from .schema_matchers import RuleSet, build_tfidf, dk_score, lin_score

ABLATION_COMPONENTS = (
    "linguistic",
    "univariate",
    "multivariate_random",
    "multivariate_known",
)
ABLATION_TOP_NS = (1, 2, 3, 4)


@dataclass(frozen=True)
class GroundTruth:
    """True source-destination correspondences, functional per source."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for s, _ in self.pairs:
            folded = s.casefold()
            if folded in seen:
                raise ValueError(f"ground truth lists source attribute {s!r} twice")
            seen.add(folded)

    def as_dict(self) -> dict[str, str]:
        return {s: d for s, d in self.pairs}


def load_ground_truth(path: str | Path) -> GroundTruth:
    """Read a truth CSV with header source_attr,dest_attr."""
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyGroundTruthError(f"{path}: empty truth file") from None
    if [h.strip().lower() for h in header] != ["source_attr", "dest_attr"]:
        raise ValueError(
            f"{path}: expected header source_attr,dest_attr (got {header})"
        )
    pairs = []
    for row_idx, row in enumerate(reader, start=2):
        if len(row) != 2:
            raise ValueError(f"{path}: row {row_idx} must have 2 cells (got {row})")
        pairs.append((row[0].strip(), row[1].strip()))
    return GroundTruth(tuple(pairs))


def resolve_ground_truth(
    truth: GroundTruth, source: Dataset, dest: Dataset
) -> GroundTruth:
    """Canonicalize truth names against the datasets, naming bad rows."""
    resolved = []
    for row_idx, (s, d) in enumerate(truth.pairs, start=2):
        try:
            resolved.append((source.resolve(s), dest.resolve(d)))
        except UnknownAttributeError as exc:
            raise UnknownAttributeError(
                f"ground truth row {row_idx} ({s!r}, {d!r}): {exc}"
            ) from None
    return GroundTruth(tuple(resolved))


@dataclass(frozen=True)
class F1Scores:
    precision: float
    recall: float
    f1: float


def _known_predictions(
    known: Sequence[KnownPair], truth_map: Mapping[str, str]
) -> dict[str, str]:
    return {
        k.source_attr: k.dest_attr
        for k in known
        if k.origin is not Origin.RANDOM_PIVOT and k.source_attr in truth_map
    }


def evaluate_f1(
    suggestions: Sequence[Suggestion],
    truth: GroundTruth,
    known: Sequence[KnownPair] = (),
) -> F1Scores:
    """Precision/recall/F1 of Top-1 predictions against the ground truth."""
    if not truth.pairs:
        raise EmptyGroundTruthError("ground truth has no pairs")
    truth_map = truth.as_dict()
    predicted = _known_predictions(known, truth_map)
    for s in suggestions:
        if s.source_attr in truth_map and s.ranked:
            predicted.setdefault(s.source_attr, s.ranked[0][0])

    correct = sum(1 for s, d in predicted.items() if truth_map[s] == d)
    precision = correct / len(predicted) if predicted else 0.0
    recall = correct / len(truth.pairs)
    f1 = (
        2 * precision * recall / (precision + recall)
        if precision + recall > 0
        else 0.0
    )
    return F1Scores(precision=precision, recall=recall, f1=f1)


def topn_accuracy(
    suggestions: Sequence[Suggestion],
    truth: GroundTruth,
    n: int,
    known: Sequence[KnownPair] = (),
) -> float:
    """Fraction of truth pairs whose destination is in the source's top N."""
    if n < 1:
        raise ValueError(f"n must be >= 1 (got {n})")
    if not truth.pairs:
        return 0.0
    confirmed = _known_predictions(known, truth.as_dict())
    top_by_source = {
        s.source_attr: [d for d, _ in s.ranked[:n]] for s in suggestions
    }
    hits = 0
    for s, d in truth.pairs:
        if confirmed.get(s) == d or d in top_by_source.get(s, []):
            hits += 1
    return hits / len(truth.pairs)


def _component_weights(component: str) -> tuple[float, float, float, float]:
    return {
        "domain_knowledge": (1.0, 0.0, 0.0, 0.0),
        "linguistic": (0.0, 1.0, 0.0, 0.0),
        "univariate": (0.0, 0.0, 1.0, 0.0),
        "multivariate_random": (0.0, 0.0, 0.0, 1.0),
        "multivariate_known": (0.0, 0.0, 0.0, 1.0),
    }[component]


def ablation(
    source: Dataset,
    dest: Dataset,
    truth: GroundTruth,
    cfg: MatcherConfig,
) -> dict[str, dict[int, float]]:
    """Top-1..4 accuracy of each individual matcher component.

    The domain-knowledge matcher is omitted (it restates the rules); the
    multivariate component runs twice, once pivoting on a seeded random
    pair and once on a seeded choice of a true pair from the ground truth.
    """
    truth = resolve_ground_truth(truth, source, dest)
    table: dict[str, dict[int, float]] = {}
    for component in ABLATION_COMPONENTS:
        weights = _component_weights(component)
        run_cfg = MatcherConfig(
            g=cfg.g, w=weights, top_n=max(ABLATION_TOP_NS),
            bins=cfg.bins, seed=cfg.seed,
        )
        known: list[KnownPair] = []
        if component == "multivariate_known":
            rng = random.Random(cfg.seed)
            s, d = rng.choice(sorted(truth.pairs))
            known = [KnownPair(s, d, origin=Origin.USER)]
        matrix = score_all(source, dest, None, known, run_cfg)
        suggestions = rank(
            matrix,
            max(ABLATION_TOP_NS),
            exclude_sources=frozenset(k.source_attr for k in known),
            exclude_dests=frozenset(k.dest_attr for k in known),
        )
        table[component] = {
            n: topn_accuracy(suggestions, truth, n, known) for n in ABLATION_TOP_NS
        }
    return table


def ablation_to_csv(table: Mapping[str, Mapping[int, float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["component", "top_n", "accuracy"])
    for component, by_n in table.items():
        for n in sorted(by_n):
            writer.writerow([component, n, repr(by_n[n])])
    return buf.getvalue()


def time_matchers(
    source: Dataset,
    dest: Dataset,
    cfg: MatcherConfig,
    rules: RuleSet | None = None,
) -> dict[str, float]:
    """Wall-clock milliseconds per enabled matcher over all pairs.

    A matcher is enabled when its w weight is nonzero; file I/O is not
    included. The total is the sum of the component passes.
    """
    rules = rules if rules is not None else RuleSet()
    names = [(s.name, d.name) for s in source.attributes for d in dest.attributes]
    timings: dict[str, float] = {}

    w1, w2, w3, w4 = cfg.w
    if w1 > 0:
        start = time.perf_counter()
        for s, d in names:
            dk_score(s, d, rules)
        timings["domain_knowledge"] = (time.perf_counter() - start) * 1000.0
    if w2 > 0:
        start = time.perf_counter()
        corpus = build_tfidf(source, dest)
        for s, d in names:
            lin_score(s, d, corpus, cfg.g)
        timings["linguistic"] = (time.perf_counter() - start) * 1000.0
    if w3 > 0:
        start = time.perf_counter()
        src_profiles = {a.name: uni_profile(a, cfg.bins) for a in source.attributes}
        dst_profiles = {a.name: uni_profile(a, cfg.bins) for a in dest.attributes}
        for s, d in names:
            uni_from_profiles(src_profiles[s], dst_profiles[d])
        timings["univariate"] = (time.perf_counter() - start) * 1000.0
    if w4 > 0:
        start = time.perf_counter()
        mul_score(source, dest, [], cfg.seed)
        timings["multivariate"] = (time.perf_counter() - start) * 1000.0

    timings["total"] = sum(timings.values())
    return timings


@dataclass(frozen=True)
class EvalReport:
    """F1, Top-N accuracy, and per-matcher timings for one run."""

    precision: float
    recall: float
    f1: float
    topn_accuracy: dict[int, float]
    timings: dict[str, float]

    def to_json(self) -> str:
        return json.dumps(
            {
                "precision": self.precision,
                "recall": self.recall,
                "f1": self.f1,
                "topn_accuracy": {str(n): v for n, v in self.topn_accuracy.items()},
                "timings_ms": self.timings,
            },
            indent=2,
        )


def evaluate(
    source: Dataset,
    dest: Dataset,
    truth: GroundTruth,
    cfg: MatcherConfig,
    rules: RuleSet | None = None,
    known: Sequence[KnownPair] = (),
    top_ns: Sequence[int] = ABLATION_TOP_NS,
) -> EvalReport:
    """Full evaluation run: score, rank, F1, Top-N accuracies, timings."""
    truth = resolve_ground_truth(truth, source, dest)
    known = [
        KnownPair(source.resolve(k.source_attr), dest.resolve(k.dest_attr), k.origin)
        for k in known
    ]
    matrix = score_all(source, dest, rules, known, cfg)
    user_known = [k for k in known if k.origin is not Origin.RANDOM_PIVOT]
    suggestions = rank(
        matrix,
        max([*top_ns, cfg.top_n]),
        exclude_sources=frozenset(k.source_attr for k in user_known),
        exclude_dests=frozenset(k.dest_attr for k in user_known),
    )
    scores = evaluate_f1(suggestions, truth, known)
    topn = {n: topn_accuracy(suggestions, truth, n, known) for n in top_ns}
    timings = time_matchers(source, dest, cfg, rules)
    return EvalReport(
        precision=scores.precision,
        recall=scores.recall,
        f1=scores.f1,
        topn_accuracy=topn,
        timings=timings,
    )

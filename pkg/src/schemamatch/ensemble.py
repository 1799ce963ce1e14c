"""End-to-end pair scoring, Top-N ranking, and the confirm-and-rescore step.

score_all computes all four matcher scores for every source/destination
attribute pair and combines them with the w weights; rank turns a matrix
into per-source Top-N suggestions; rescore_with_confirmation appends a
confirmed pair and recomputes only the multivariate-dependent parts.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

from .instance_matchers import mul_score, uni_from_profiles, uni_profile
from .model import (
    Dataset,
    DuplicateConfirmationError,
    EmptyDatasetError,
    KnownPair,
    MatcherConfig,
    Origin,
    PairScore,
    ScoreMatrix,
    config_fingerprint,
    validate_config,
)
from .schema_matchers import RuleSet, build_tfidf, dk_score, lin_score


@dataclass(frozen=True)
class Suggestion:
    """Top-N destination candidates for one source attribute."""

    source_attr: str
    ranked: tuple[tuple[str, float], ...]


def score_all(
    source: Dataset,
    dest: Dataset,
    rules: RuleSet | None,
    known: Sequence[KnownPair],
    cfg: MatcherConfig,
) -> ScoreMatrix:
    """Score every (source, destination) attribute pair.

    Pairs missing from the multivariate map (rows/columns of a pivot
    attribute) contribute mul = 0.
    """
    validate_config(cfg)
    if not source.attributes:
        raise EmptyDatasetError(f"dataset {source.name!r} has no attributes")
    if not dest.attributes:
        raise EmptyDatasetError(f"dataset {dest.name!r} has no attributes")

    rules = rules if rules is not None else RuleSet()
    known = [
        KnownPair(source.resolve(k.source_attr), dest.resolve(k.dest_attr), k.origin)
        for k in known
    ]

    corpus = build_tfidf(source, dest)
    mul_map, pivots = mul_score(source, dest, known, cfg.seed)
    src_profiles = {a.name: uni_profile(a, cfg.bins) for a in source.attributes}
    dst_profiles = {a.name: uni_profile(a, cfg.bins) for a in dest.attributes}

    w1, w2, w3, w4 = cfg.w
    pairs: list[PairScore] = []
    for s in source.attributes:
        for d in dest.attributes:
            dk = float(dk_score(s.name, d.name, rules))
            lin = lin_score(s.name, d.name, corpus, cfg.g)
            uni = uni_from_profiles(src_profiles[s.name], dst_profiles[d.name])
            mul = mul_map.get((s.name, d.name), 0.0)
            final = w1 * dk + w2 * lin + w3 * uni + w4 * mul
            pairs.append(
                PairScore(
                    source_attr=s.name,
                    dest_attr=d.name,
                    dk=dk,
                    lin=lin,
                    uni=uni,
                    mul=mul,
                    final=final,
                )
            )
    return ScoreMatrix(
        pairs=tuple(pairs),
        config_fingerprint=config_fingerprint(cfg, pivots),
        pivots=tuple(pivots),
    )


def rank(
    matrix: ScoreMatrix,
    top_n: int,
    *,
    exclude_sources: frozenset[str] = frozenset(),
    exclude_dests: frozenset[str] = frozenset(),
    exclude_pairs: frozenset[tuple[str, str]] = frozenset(),
) -> list[Suggestion]:
    """Top-N destination candidates per source attribute.

    Candidates sort by final score descending with ties broken by
    destination name ascending. The exclude sets drop confirmed attributes
    and rejected pairs from the output without touching the matrix.
    """
    if top_n < 1:
        raise ValueError(f"top_n must be >= 1 (got {top_n})")
    by_source: dict[str, list[PairScore]] = {}
    for p in matrix.pairs:
        by_source.setdefault(p.source_attr, []).append(p)

    suggestions: list[Suggestion] = []
    for source_attr, candidates in by_source.items():
        if source_attr in exclude_sources:
            continue
        kept = [
            c
            for c in candidates
            if c.dest_attr not in exclude_dests
            and (source_attr, c.dest_attr) not in exclude_pairs
        ]
        kept.sort(key=lambda c: (-c.final, c.dest_attr))
        suggestions.append(
            Suggestion(
                source_attr=source_attr,
                ranked=tuple((c.dest_attr, c.final) for c in kept[:top_n]),
            )
        )
    return suggestions


def rescore_with_confirmation(session, confirmed: KnownPair) -> ScoreMatrix:
    """Append a confirmed pair to a session and recompute its matrix.

    Only the multivariate scores and the weighted finals change; the dk,
    lin, and uni components do not depend on known pairs and are reused
    from the current matrix.
    """
    source_attr = session.source.resolve(confirmed.source_attr)
    dest_attr = session.dest.resolve(confirmed.dest_attr)
    for k in session.known:
        if k.origin is Origin.RANDOM_PIVOT:
            continue
        if k.source_attr == source_attr or k.dest_attr == dest_attr:
            raise DuplicateConfirmationError(
                f"({source_attr!r}, {dest_attr!r}) overlaps confirmed pair "
                f"({k.source_attr!r}, {k.dest_attr!r})"
            )

    new_known = [
        k for k in session.known if k.origin is not Origin.RANDOM_PIVOT
    ] + [KnownPair(source_attr, dest_attr, confirmed.origin)]

    cfg = session.cfg
    mul_map, pivots = mul_score(session.source, session.dest, new_known, cfg.seed)
    w1, w2, w3, w4 = cfg.w
    pairs = []
    for p in session.matrix.pairs:
        mul = mul_map.get((p.source_attr, p.dest_attr), 0.0)
        final = w1 * p.dk + w2 * p.lin + w3 * p.uni + w4 * mul
        pairs.append(
            PairScore(
                source_attr=p.source_attr,
                dest_attr=p.dest_attr,
                dk=p.dk,
                lin=p.lin,
                uni=p.uni,
                mul=mul,
                final=final,
            )
        )
    matrix = ScoreMatrix(
        pairs=tuple(pairs),
        config_fingerprint=config_fingerprint(cfg, pivots),
        pivots=tuple(pivots),
    )
    session.known = new_known
    session.matrix = matrix
    return matrix


def matrix_to_csv(matrix: ScoreMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["source_attr", "dest_attr", "dk", "lin", "uni", "mul", "final"])
    for p in matrix.pairs:
        writer.writerow(
            [p.source_attr, p.dest_attr, repr(p.dk), repr(p.lin), repr(p.uni),
             repr(p.mul), repr(p.final)]
        )
    return buf.getvalue()


def matrix_to_json(matrix: ScoreMatrix) -> str:
    payload = {
        "config_fingerprint": matrix.config_fingerprint,
        "pivots": [
            {"source_attr": k.source_attr, "dest_attr": k.dest_attr,
             "origin": k.origin.value}
            for k in matrix.pivots
        ],
        "pairs": [
            {"source_attr": p.source_attr, "dest_attr": p.dest_attr,
             "dk": p.dk, "lin": p.lin, "uni": p.uni, "mul": p.mul,
             "final": p.final}
            for p in matrix.pairs
        ],
    }
    return json.dumps(payload, indent=2)


def suggestions_to_json(suggestions: Sequence[Suggestion]) -> str:
    payload = [
        {
            "source_attr": s.source_attr,
            "ranked": [{"dest_attr": d, "score": f} for d, f in s.ranked],
        }
        for s in suggestions
    ]
    return json.dumps(payload, indent=2)

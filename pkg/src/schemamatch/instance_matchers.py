"""Instance-level scoring: univariate statistics and correlation mirroring.

The univariate matcher compares numeric pairs by mean/SD closeness and
categorical pairs by the Jaccard coefficient of their distinct values
(mixed pairs discretize the numeric side first). The multivariate matcher
pivots on known matched pairs: it ranks every other attribute by Pearson
correlation to the pivot within each dataset, then scores cross pairs by
how closely those correlations mirror each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ingest import discretize
from .model import (
    Attribute,
    Dataset,
    EmptyAttributeError,
    InsufficientDataError,
    Kind,
    KnownPair,
    Origin,
    clamp01,
)

MEAN_WEIGHT = 0.8
SD_WEIGHT = 0.2


@dataclass(frozen=True)
class StatsSummary:
    """Mean and population standard deviation over non-null values."""

    mean: float
    sd: float
    n: int


@dataclass(frozen=True)
class CorrelationProfile:
    """Correlations of every other attribute against one pivot attribute.

    Entries are sorted by correlation descending, ties by name ascending;
    the pivot never appears in its own entries.
    """

    pivot: str
    entries: tuple[tuple[str, float], ...]


def stats(attr: Attribute) -> StatsSummary:
    if attr.kind is not Kind.NUMERIC:
        raise ValueError(f"attribute {attr.name!r} is not numeric")
    values = [v for v in attr.values if v is not None]
    if not values:
        raise EmptyAttributeError(f"attribute {attr.name!r} has no values")
    arr = np.asarray(values, dtype=float)
    return StatsSummary(mean=float(arr.mean()), sd=float(arr.std()), n=len(values))


def _distinct(attr: Attribute) -> frozenset[str]:
    return frozenset(
        str(v).lower() for v in attr.values if v is not None
    )


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    union = a | b
    if not union:
        raise EmptyAttributeError("both attributes are empty")
    return len(a & b) / len(union)


@dataclass(frozen=True)
class UniProfile:
    """Everything uni_score needs from one attribute, computed once.

    Numeric attributes carry their stats plus the distinct set of their
    discretized form (used against categorical partners); categorical
    attributes carry just their distinct value set.
    """

    kind: Kind
    summary: StatsSummary | None
    distinct: frozenset[str]


def uni_profile(attr: Attribute, bins: int) -> UniProfile:
    if not attr.non_null():
        raise EmptyAttributeError(f"attribute {attr.name!r} has no values")
    if attr.kind is Kind.NUMERIC:
        return UniProfile(
            kind=Kind.NUMERIC,
            summary=stats(attr),
            distinct=_distinct(discretize(attr, bins)),
        )
    return UniProfile(kind=Kind.CATEGORICAL, summary=None, distinct=_distinct(attr))


def uni_from_profiles(a: UniProfile, b: UniProfile) -> float:
    if a.kind is Kind.NUMERIC and b.kind is Kind.NUMERIC:
        sa, sb = a.summary, b.summary
        mean_denom = max(abs(sa.mean), abs(sb.mean))
        sd_denom = max(sa.sd, sb.sd)
        mean_term = (
            MEAN_WEIGHT * abs(sa.mean - sb.mean) / mean_denom if mean_denom else 0.0
        )
        sd_term = SD_WEIGHT * abs(sa.sd - sb.sd) / sd_denom if sd_denom else 0.0
        return clamp01(1.0 - (mean_term + sd_term))
    return _jaccard(a.distinct, b.distinct)


def uni_score(a: Attribute, b: Attribute, bins: int) -> float:
    """Univariate similarity of two attributes, in [0, 1].

    Numeric pairs: 1 - (0.8*|mean gap|/max|mean| + 0.2*|sd gap|/max sd),
    each ratio 0 when its denominator is 0, clamped to [0, 1]. Categorical
    pairs: Jaccard over case-folded distinct values. Mixed pairs discretize
    the numeric side into `bins` equal-width bins first.
    """
    return uni_from_profiles(uni_profile(a, bins), uni_profile(b, bins))


def pearson(x: Sequence[float | None], y: Sequence[float | None]) -> float:
    """Pearson coefficient over pairwise-complete positions.

    Returns 0 when either side has zero variance over the complete pairs;
    raises InsufficientDataError below two complete pairs.
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    xa = np.asarray([np.nan if v is None else v for v in x], dtype=float)
    ya = np.asarray([np.nan if v is None else v for v in y], dtype=float)
    mask = np.isfinite(xa) & np.isfinite(ya)
    if int(mask.sum()) < 2:
        raise InsufficientDataError(
            f"only {int(mask.sum())} complete pairs; need at least 2"
        )
    xa = xa[mask]
    ya = ya[mask]
    xd = xa - xa.mean()
    yd = ya - ya.mean()
    denom = float(np.sqrt((xd * xd).sum() * (yd * yd).sum()))
    if denom == 0.0:
        return 0.0
    pc = float((xd * yd).sum()) / denom
    return max(-1.0, min(1.0, pc))


def _encode_numeric(attr: Attribute) -> list[float | None]:
    """Numeric view of an attribute for correlation.

    Numeric attributes pass through; categorical cells are replaced by the
    frequency of their value within the column (deterministic and
    order-independent), nulls stay null.
    """
    if attr.kind is Kind.NUMERIC:
        return list(attr.values)
    counts: dict[str, int] = {}
    for v in attr.values:
        if v is not None:
            counts[v] = counts.get(v, 0) + 1
    return [None if v is None else float(counts[v]) for v in attr.values]


def correlation_profile(dataset: Dataset, pivot: str) -> CorrelationProfile:
    """Rank every other attribute by Pearson correlation to the pivot.

    Attributes with too few complete pairs against the pivot contribute 0,
    like zero-variance columns: no signal must not poison the profile.
    """
    pivot_attr = dataset.get(pivot)
    pivot_vec = _encode_numeric(pivot_attr)
    entries: list[tuple[str, float]] = []
    for attr in dataset.attributes:
        if attr.name == pivot_attr.name:
            continue
        try:
            pc = pearson(pivot_vec, _encode_numeric(attr))
        except InsufficientDataError:
            pc = 0.0
        entries.append((attr.name, pc))
    entries.sort(key=lambda e: (-e[1], e[0]))
    return CorrelationProfile(pivot=pivot_attr.name, entries=tuple(entries))


def mirror_correlation(
    src_profile: CorrelationProfile, dst_profile: CorrelationProfile
) -> dict[tuple[str, str], float]:
    """Score every cross pair by 1 - |pc_src - pc_dst| / 2."""
    out: dict[tuple[str, str], float] = {}
    for s_name, s_pc in src_profile.entries:
        for d_name, d_pc in dst_profile.entries:
            out[(s_name, d_name)] = 1.0 - abs(s_pc - d_pc) / 2.0
    return out


def choose_random_pivot(source: Dataset, dest: Dataset, seed: int) -> KnownPair:
    """Seeded uniform choice over all source x destination attribute pairs."""
    rng = random.Random(seed)
    pairs = [
        (s.name, d.name) for s in source.attributes for d in dest.attributes
    ]
    s_name, d_name = rng.choice(pairs)
    return KnownPair(s_name, d_name, origin=Origin.RANDOM_PIVOT)


def mul_score(
    source: Dataset,
    dest: Dataset,
    known: Sequence[KnownPair],
    seed: int,
) -> tuple[dict[tuple[str, str], float], list[KnownPair]]:
    """Multivariate mirror scores averaged over all pivot pairs.

    With no known pairs a single pivot is drawn at random (seeded) and
    returned with origin=random_pivot so the run is reproducible. Pairs
    involving a pivot attribute have no entry on that side (their score is
    taken as 0 downstream). Returns the score map and the pivots used.
    """
    pivots = list(known)
    if not pivots:
        pivots = [choose_random_pivot(source, dest, seed)]

    sums: dict[tuple[str, str], float] = {}
    counts: dict[tuple[str, str], int] = {}
    for pair in pivots:
        src_name = source.resolve(pair.source_attr)
        dst_name = dest.resolve(pair.dest_attr)
        mirror = mirror_correlation(
            correlation_profile(source, src_name),
            correlation_profile(dest, dst_name),
        )
        for key, value in mirror.items():
            sums[key] = sums.get(key, 0.0) + value
            counts[key] = counts.get(key, 0) + 1
    scores = {key: sums[key] / counts[key] for key in sums}
    return scores, pivots

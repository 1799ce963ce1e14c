"""Shared data types, configuration, and errors for the matching pipeline.

Everything here is immutable after construction and may be shared freely
across threads; the mutable review-session state lives in ``session.py``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

WEIGHT_TOL = 1e-9

Cell = float | str | None


class MatchError(Exception):
    """Base class for all matcher errors."""


class WeightSumError(MatchError):
    """A weight vector is negative somewhere or does not sum to 1."""


class NonPositiveParamError(MatchError):
    """top_n or bins is outside its allowed range."""


class MalformedCsvError(MatchError):
    """CSV rows do not all have the header's width."""


class DuplicateHeaderError(MatchError):
    """Two headers collide after case-folding."""


class EmptyAttributeError(MatchError):
    """An attribute has no non-null values where at least one is required."""


class EmptyDatasetError(MatchError):
    """A dataset has no attributes."""


class InsufficientDataError(MatchError):
    """Fewer than two complete value pairs for a correlation."""


class UnknownAttributeError(MatchError):
    """A referenced attribute name does not exist in its dataset."""


class DuplicateConfirmationError(MatchError):
    """A confirmation names an attribute that is already confirmed."""


class EmptyGroundTruthError(MatchError):
    """The ground-truth pair set is empty."""


class Kind(str, Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"


class Origin(str, Enum):
    USER = "user"
    RULE = "rule"
    RANDOM_PIVOT = "random_pivot"


@dataclass(frozen=True)
class Attribute:
    """One column: name, inferred kind, aligned cell values, name tokens.

    Numeric attributes store floats (or None for missing cells); categorical
    attributes store lowercase strings (or None).
    """

    name: str
    kind: Kind
    values: tuple[Cell, ...]
    tokens: tuple[str, ...]

    def non_null(self) -> list[Cell]:
        return [v for v in self.values if v is not None]


@dataclass(frozen=True)
class Dataset:
    """A named table of attributes with aligned rows."""

    name: str
    attributes: tuple[Attribute, ...]
    row_count: int

    def __post_init__(self) -> None:
        seen: dict[str, str] = {}
        for attr in self.attributes:
            folded = attr.name.casefold()
            if folded in seen:
                raise DuplicateHeaderError(
                    f"dataset {self.name!r}: attributes {seen[folded]!r} and "
                    f"{attr.name!r} collide after case-folding"
                )
            seen[folded] = attr.name
            if len(attr.values) != self.row_count:
                raise MalformedCsvError(
                    f"dataset {self.name!r}: attribute {attr.name!r} has "
                    f"{len(attr.values)} values, expected {self.row_count}"
                )

    @property
    def attribute_names(self) -> list[str]:
        return [a.name for a in self.attributes]

    def get(self, name: str) -> Attribute:
        """Look up an attribute case-insensitively."""
        folded = name.casefold()
        for attr in self.attributes:
            if attr.name.casefold() == folded:
                return attr
        raise UnknownAttributeError(
            f"no attribute {name!r} in dataset {self.name!r}"
        )

    def resolve(self, name: str) -> str:
        """Canonical stored spelling of a (possibly re-cased) name."""
        return self.get(name).name


@dataclass(frozen=True)
class MatcherConfig:
    """Weights and knobs for one scoring run.

    g weights the three linguistic metrics (Levenshtein, Monge-Elkan,
    TF-IDF); w weights the four matchers (domain knowledge, linguistic,
    univariate, multivariate). Both must sum to 1.
    """

    g: tuple[float, float, float] = (1 / 3, 1 / 3, 1 / 3)
    w: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    top_n: int = 1
    bins: int = 5
    seed: int = 0


def validate_config(cfg: MatcherConfig) -> None:
    """Raise unless both weight vectors are valid and top_n/bins in range."""
    for label, vec in (("g", cfg.g), ("w", cfg.w)):
        if any(x < 0 for x in vec):
            raise WeightSumError(f"{label} weights must be non-negative: {vec}")
        if abs(sum(vec) - 1.0) > WEIGHT_TOL:
            raise WeightSumError(
                f"{label} weights must sum to 1 (got {sum(vec)!r})"
            )
    if cfg.top_n < 1:
        raise NonPositiveParamError(f"top_n must be >= 1 (got {cfg.top_n})")
    if cfg.bins < 2:
        raise NonPositiveParamError(f"bins must be >= 2 (got {cfg.bins})")


@dataclass(frozen=True)
class KnownPair:
    """A source-destination correspondence taken as ground for pivoting."""

    source_attr: str
    dest_attr: str
    origin: Origin = Origin.USER


@dataclass(frozen=True)
class PairScore:
    """All four matcher scores plus the weighted final score for one pair."""

    source_attr: str
    dest_attr: str
    dk: float
    lin: float
    uni: float
    mul: float
    final: float


@dataclass(frozen=True)
class ScoreMatrix:
    """One PairScore per (source x destination) attribute pair."""

    pairs: tuple[PairScore, ...]
    config_fingerprint: str
    pivots: tuple[KnownPair, ...] = ()

    def score(self, source_attr: str, dest_attr: str) -> PairScore:
        for p in self.pairs:
            if p.source_attr == source_attr and p.dest_attr == dest_attr:
                return p
        raise UnknownAttributeError(
            f"no pair ({source_attr!r}, {dest_attr!r}) in score matrix"
        )


def config_fingerprint(cfg: MatcherConfig, known: Sequence[KnownPair]) -> str:
    """Stable hash of a config plus the effective pivot pairs."""
    payload = {
        "g": list(cfg.g),
        "w": list(cfg.w),
        "top_n": cfg.top_n,
        "bins": cfg.bins,
        "seed": cfg.seed,
        "known": [[k.source_attr, k.dest_attr, k.origin.value] for k in known],
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def clamp01(x: float) -> float:
    return 0.0 if x < 0.0 else 1.0 if x > 1.0 else x

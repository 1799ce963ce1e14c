"""Schema-level scoring: domain-knowledge rules and the linguistic ensemble.

The linguistic score blends Levenshtein similarity on whole names,
Monge-Elkan similarity at the token level, and a TF-IDF similarity over a
corpus in which every attribute name is one document and its tokens are the
terms. All string comparison is case-folded.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from .ingest import tokenize
from .model import Dataset, EmptyDatasetError, UnknownAttributeError


@dataclass(frozen=True)
class RuleSet:
    """If-then correspondences between attribute names.

    Patterns are exact case-folded names or globs where "*" matches any run
    of characters. A rule fires in either direction.
    """

    rules: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        for src, dst in self.rules:
            if not src or not dst:
                raise ValueError(f"rule ({src!r}, {dst!r}) has an empty pattern")

    @classmethod
    def from_json(cls, path: str | Path) -> "RuleSet":
        entries = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(tuple((e["source"], e["dest"]) for e in entries))


def _glob_match(pattern: str, name: str) -> bool:
    regex = ".*".join(re.escape(part) for part in pattern.casefold().split("*"))
    return re.fullmatch(regex, name.casefold()) is not None


def dk_score(source_attr: str, dest_attr: str, rules: RuleSet) -> int:
    """1 if any rule matches the pair in either direction, else 0."""
    for src_pat, dst_pat in rules.rules:
        if _glob_match(src_pat, source_attr) and _glob_match(dst_pat, dest_attr):
            return 1
        if _glob_match(src_pat, dest_attr) and _glob_match(dst_pat, source_attr):
            return 1
    return 0


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit costs, on case-folded inputs."""
    a = a.casefold()
    b = b.casefold()
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i] + [0] * len(b)
        for j, cb in enumerate(b, start=1):
            cur[j] = min(
                prev[j] + 1,
                cur[j - 1] + 1,
                prev[j - 1] + (ca != cb),
            )
        prev = cur
    return prev[-1]


def sim_lev(a: str, b: str) -> float:
    """1 - editDistance / max length; two empty strings are identical."""
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - edit_distance(a, b) / longest


def sim_monge_elkan(a: str, b: str) -> float:
    """Mean over a's tokens of the best Levenshtein similarity in b's tokens.

    Directional: the first argument's tokens drive the outer average.
    """
    ta = tokenize(a)
    if not ta:
        return 0.0
    tb = tokenize(b)
    total = 0.0
    for t in ta:
        total += max((sim_lev(t, u) for u in tb), default=0.0)
    return total / len(ta)


@dataclass
class TfidfCorpus:
    """Per-(token, attribute-name) scores, min-max normalized to [0, 1].

    documents holds one (folded name, tokens) entry per attribute of both
    datasets; token_score is keyed by (token, folded name) and omits pairs
    where the token does not occur in the document.
    """

    documents: tuple[tuple[str, tuple[str, ...]], ...]
    token_score: dict[tuple[str, str], float]
    _by_name: dict[str, tuple[str, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._by_name = dict(self.documents)

    def tokens_of(self, attr_name: str) -> tuple[str, ...]:
        try:
            return self._by_name[attr_name.casefold()]
        except KeyError:
            raise UnknownAttributeError(
                f"attribute {attr_name!r} not in TF-IDF corpus"
            ) from None

    def score(self, token: str, attr_name: str) -> float:
        return self.token_score.get((token, attr_name.casefold()), 0.0)


def build_tfidf(source: Dataset, dest: Dataset) -> TfidfCorpus:
    """TF-IDF over the attribute names of both datasets.

    tf is the within-name token count over the name's token total; idf is
    the smoothed ln((1+D)/(1+df)) + 1. Raw products are min-max normalized
    corpus-wide; if every raw score is equal the normalization degenerates
    and all scores become 1.
    """
    if not source.attributes:
        raise EmptyDatasetError(f"dataset {source.name!r} has no attributes")
    if not dest.attributes:
        raise EmptyDatasetError(f"dataset {dest.name!r} has no attributes")

    documents: list[tuple[str, tuple[str, ...]]] = []
    for ds in (source, dest):
        for attr in ds.attributes:
            documents.append((attr.name.casefold(), attr.tokens))

    n_docs = len(documents)
    df: dict[str, int] = {}
    for _, tokens in documents:
        for t in set(tokens):
            df[t] = df.get(t, 0) + 1

    raw: dict[tuple[str, str], float] = {}
    for name, tokens in documents:
        if not tokens:
            continue
        for t in sorted(set(tokens)):
            tf = tokens.count(t) / len(tokens)
            idf = math.log((1 + n_docs) / (1 + df[t])) + 1.0
            raw[(t, name)] = tf * idf

    if raw:
        lo = min(raw.values())
        hi = max(raw.values())
        if hi > lo:
            scores = {k: (v - lo) / (hi - lo) for k, v in raw.items()}
        else:
            scores = {k: 1.0 for k in raw}
    else:
        scores = {}
    return TfidfCorpus(documents=tuple(documents), token_score=scores)


def sim_tfidf(a: str, b: str, corpus: TfidfCorpus) -> float:
    """Shared-token score mass over total token score mass, per Jaccard shape.

    For each attribute the intersection and union token sets (deduplicated)
    are summed over that attribute's own token scores; the result is the
    product of the intersection sums over the product of the union sums.
    Identical nonempty token sets score 1; a zero union sum on either side
    scores 0.
    """
    ta = set(corpus.tokens_of(a))
    tb = set(corpus.tokens_of(b))
    if ta and ta == tb:
        return 1.0
    # sorted iteration keeps float summation order hash-seed independent
    cap = sorted(ta & tb)
    cup = sorted(ta | tb)
    cup_a = sum(corpus.score(t, a) for t in cup)
    cup_b = sum(corpus.score(t, b) for t in cup)
    if cup_a == 0.0 or cup_b == 0.0:
        return 0.0
    cap_a = sum(corpus.score(t, a) for t in cap)
    cap_b = sum(corpus.score(t, b) for t in cap)
    return (cap_a * cap_b) / (cup_a * cup_b)


def lin_score(
    source_attr: str,
    dest_attr: str,
    corpus: TfidfCorpus,
    g: tuple[float, float, float],
) -> float:
    """Weighted sum of the three linguistic similarities for one pair."""
    g1, g2, g3 = g
    return (
        g1 * sim_lev(source_attr, dest_attr)
        + g2 * sim_monge_elkan(source_attr, dest_attr)
        + g3 * sim_tfidf(source_attr, dest_attr, corpus)
    )

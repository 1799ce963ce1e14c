"""Mutable review-session state for the confirm-and-rescore loop.

A session owns two datasets, a config, the running known-pair list, the
current score matrix, and an append-only decision log. Mutations must be
serialized per session (the HTTP service takes a lock); suggestions after
k confirmations are identical to a fresh batch run given those k pairs as
initial known pairs.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Sequence

from . import ensemble
from .ingest import dataset_to_csv, parse_dataset
from .model import (
    Dataset,
    KnownPair,
    MatcherConfig,
    Origin,
    ScoreMatrix,
)
from .schema_matchers import RuleSet


@dataclass(frozen=True)
class Decision:
    timestamp: str
    action: str  # "confirm" | "reject"
    source_attr: str
    dest_attr: str


@dataclass
class MatchSession:
    id: str
    source: Dataset
    dest: Dataset
    cfg: MatcherConfig
    rules: RuleSet
    known: list[KnownPair]
    matrix: ScoreMatrix
    decisions: list[Decision] = field(default_factory=list)
    rejected: set[tuple[str, str]] = field(default_factory=set)

    def confirmed_pairs(self) -> list[KnownPair]:
        return [k for k in self.known if k.origin is not Origin.RANDOM_PIVOT]

    def suggestions(self, top_n: int | None = None) -> list[ensemble.Suggestion]:
        """Ranked candidates excluding confirmed attributes and rejected pairs."""
        confirmed = self.confirmed_pairs()
        return ensemble.rank(
            self.matrix,
            top_n if top_n is not None else self.cfg.top_n,
            exclude_sources=frozenset(k.source_attr for k in confirmed),
            exclude_dests=frozenset(k.dest_attr for k in confirmed),
            exclude_pairs=frozenset(self.rejected),
        )

    def confirm(self, source_attr: str, dest_attr: str) -> ScoreMatrix:
        matrix = ensemble.rescore_with_confirmation(
            self, KnownPair(source_attr, dest_attr, origin=Origin.USER)
        )
        self.decisions.append(
            Decision(
                timestamp=datetime.now(timezone.utc).isoformat(),
                action="confirm",
                source_attr=self.source.resolve(source_attr),
                dest_attr=self.dest.resolve(dest_attr),
            )
        )
        return matrix

    def reject(self, source_attr: str, dest_attr: str) -> None:
        pair = (self.source.resolve(source_attr), self.dest.resolve(dest_attr))
        self.rejected.add(pair)
        self.decisions.append(
            Decision(
                timestamp=datetime.now(timezone.utc).isoformat(),
                action="reject",
                source_attr=pair[0],
                dest_attr=pair[1],
            )
        )

    def export_state(self) -> dict:
        """Snapshot everything needed to rebuild an identical session."""
        return {
            "id": self.id,
            "source_name": self.source.name,
            "dest_name": self.dest.name,
            "source_csv": dataset_to_csv(self.source),
            "dest_csv": dataset_to_csv(self.dest),
            "config": {
                "g": list(self.cfg.g),
                "w": list(self.cfg.w),
                "top_n": self.cfg.top_n,
                "bins": self.cfg.bins,
                "seed": self.cfg.seed,
            },
            "rules": [{"source": s, "dest": d} for s, d in self.rules.rules],
            "known": [
                {"source_attr": k.source_attr, "dest_attr": k.dest_attr,
                 "origin": k.origin.value}
                for k in self.known
            ],
            "rejected": sorted(self.rejected),
            "decisions": [
                {"timestamp": d.timestamp, "action": d.action,
                 "source_attr": d.source_attr, "dest_attr": d.dest_attr}
                for d in self.decisions
            ],
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.export_state(), fh, indent=2)


def new_session(
    source: Dataset,
    dest: Dataset,
    cfg: MatcherConfig | None = None,
    rules: RuleSet | None = None,
    known: Sequence[KnownPair] = (),
    session_id: str | None = None,
) -> MatchSession:
    cfg = cfg if cfg is not None else MatcherConfig()
    rules = rules if rules is not None else RuleSet()
    known_resolved = [
        KnownPair(source.resolve(k.source_attr), dest.resolve(k.dest_attr), k.origin)
        for k in known
    ]
    matrix = ensemble.score_all(source, dest, rules, known_resolved, cfg)
    return MatchSession(
        id=session_id if session_id is not None else uuid.uuid4().hex,
        source=source,
        dest=dest,
        cfg=cfg,
        rules=rules,
        known=list(matrix.pivots) if not known_resolved else known_resolved,
        matrix=matrix,
        decisions=[],
        rejected=set(),
    )


def import_state(state: dict) -> MatchSession:
    """Rebuild a session from an export_state snapshot.

    The score matrix is recomputed from the snapshot inputs; determinism
    guarantees it matches the exported session's matrix.
    """
    source = parse_dataset(state["source_csv"], state["source_name"])
    dest = parse_dataset(state["dest_csv"], state["dest_name"])
    cfg = MatcherConfig(
        g=tuple(state["config"]["g"]),
        w=tuple(state["config"]["w"]),
        top_n=state["config"]["top_n"],
        bins=state["config"]["bins"],
        seed=state["config"]["seed"],
    )
    rules = RuleSet(tuple((r["source"], r["dest"]) for r in state["rules"]))
    known = [
        KnownPair(k["source_attr"], k["dest_attr"], Origin(k["origin"]))
        for k in state["known"]
    ]
    user_known = [k for k in known if k.origin is not Origin.RANDOM_PIVOT]
    session = new_session(
        source, dest, cfg, rules, user_known, session_id=state["id"]
    )
    session.rejected = {tuple(p) for p in state.get("rejected", [])}
    session.decisions = [
        Decision(
            timestamp=d["timestamp"],
            action=d["action"],
            source_attr=d["source_attr"],
            dest_attr=d["dest_attr"],
        )
        for d in state.get("decisions", [])
    ]
    return session


def load_session(path) -> MatchSession:
    with open(path, encoding="utf-8") as fh:
        return import_state(json.load(fh))

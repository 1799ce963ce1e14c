"""HTTP session service for the review loop.

JSON in, JSON out. Sessions are held in memory; mutations on one session
are serialized behind a lock while distinct sessions stay independent.
Error bodies are {"error": "..."} with 404 for unknown sessions, 409 for
duplicate confirmations, and 422 for bad attribute names or config.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse, RedirectResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import evaluation
from .ingest import load_dataset, parse_dataset
from .model import (
    DuplicateConfirmationError,
    KnownPair,
    MatchError,
    MatcherConfig,
    Origin,
)
from .schema_matchers import RuleSet
from .session import MatchSession, new_session


class SessionNotFoundError(MatchError):
    pass


class SessionStore:
    """In-memory session registry with one mutation lock per session."""

    def __init__(self) -> None:
        self._sessions: dict[str, MatchSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self.truth_paths: dict[str, str] = {}

    def add(self, session: MatchSession) -> None:
        with self._registry_lock:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()

    def get(self, session_id: str) -> tuple[MatchSession, threading.Lock]:
        with self._registry_lock:
            if session_id not in self._sessions:
                raise SessionNotFoundError(f"no session {session_id!r}")
            return self._sessions[session_id], self._locks[session_id]

    def remove(self, session_id: str) -> None:
        with self._registry_lock:
            if session_id not in self._sessions:
                raise SessionNotFoundError(f"no session {session_id!r}")
            del self._sessions[session_id]
            del self._locks[session_id]
            self.truth_paths.pop(session_id, None)


class ConfigBody(BaseModel):
    g: tuple[float, float, float] | None = None
    w: tuple[float, float, float, float] | None = None
    top_n: int | None = None
    bins: int | None = None
    seed: int | None = None

    def to_config(self) -> MatcherConfig:
        base = MatcherConfig()
        return MatcherConfig(
            g=self.g if self.g is not None else base.g,
            w=self.w if self.w is not None else base.w,
            top_n=self.top_n if self.top_n is not None else base.top_n,
            bins=self.bins if self.bins is not None else base.bins,
            seed=self.seed if self.seed is not None else base.seed,
        )


class CreateSessionBody(BaseModel):
    source_path: str | None = None
    dest_path: str | None = None
    source_csv: str | None = None
    dest_csv: str | None = None
    source_name: str = "source"
    dest_name: str = "dest"
    config: ConfigBody | None = None
    rules: list[dict[str, str]] | None = None
    known: list[dict[str, str]] | None = None
    truth_path: str | None = None


class PairBody(BaseModel):
    source_attr: str
    dest_attr: str


def _suggestion_payload(session: MatchSession, top_n: int | None) -> dict:
    suggestions = session.suggestions(top_n)
    index = {(p.source_attr, p.dest_attr): p for p in session.matrix.pairs}
    return {
        "session_id": session.id,
        "top_n": top_n if top_n is not None else session.cfg.top_n,
        "suggestions": [
            {
                "source_attr": s.source_attr,
                "candidates": [
                    {
                        "dest_attr": dest_attr,
                        "final": index[(s.source_attr, dest_attr)].final,
                        "dk": index[(s.source_attr, dest_attr)].dk,
                        "lin": index[(s.source_attr, dest_attr)].lin,
                        "uni": index[(s.source_attr, dest_attr)].uni,
                        "mul": index[(s.source_attr, dest_attr)].mul,
                    }
                    for dest_attr, _ in s.ranked
                ],
            }
            for s in suggestions
        ],
        "confirmed": [
            {"source_attr": k.source_attr, "dest_attr": k.dest_attr,
             "origin": k.origin.value}
            for k in session.confirmed_pairs()
        ],
        "rejected": [
            {"source_attr": s, "dest_attr": d} for s, d in sorted(session.rejected)
        ],
    }


def create_app(store: SessionStore | None = None, ui_dir: str | Path | None = None) -> FastAPI:
    store = store if store is not None else SessionStore()
    app = FastAPI(title="schemamatch session service")
    app.state.store = store

    @app.exception_handler(SessionNotFoundError)
    async def _not_found(request: Request, exc: SessionNotFoundError):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(DuplicateConfirmationError)
    async def _duplicate(request: Request, exc: DuplicateConfirmationError):
        return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.exception_handler(MatchError)
    async def _match_error(request: Request, exc: MatchError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _validation(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        if body.source_csv is not None:
            source = parse_dataset(body.source_csv, body.source_name)
        elif body.source_path is not None:
            source = load_dataset(body.source_path, body.source_name)
        else:
            raise ValueError("one of source_csv or source_path is required")
        if body.dest_csv is not None:
            dest = parse_dataset(body.dest_csv, body.dest_name)
        elif body.dest_path is not None:
            dest = load_dataset(body.dest_path, body.dest_name)
        else:
            raise ValueError("one of dest_csv or dest_path is required")

        cfg = body.config.to_config() if body.config is not None else MatcherConfig()
        rules = RuleSet(
            tuple((r["source"], r["dest"]) for r in body.rules or ())
        )
        known = [
            KnownPair(k["source_attr"], k["dest_attr"], origin=Origin.USER)
            for k in body.known or ()
        ]
        session = new_session(source, dest, cfg, rules, known)
        store.add(session)
        if body.truth_path is not None:
            store.truth_paths[session.id] = body.truth_path
        return {
            "session_id": session.id,
            "source": source.name,
            "dest": dest.name,
            "n_source_attrs": len(source.attributes),
            "n_dest_attrs": len(dest.attributes),
        }

    @app.get("/sessions/{session_id}/suggestions")
    def get_suggestions(session_id: str, top: int | None = None):
        session, lock = store.get(session_id)
        with lock:
            return _suggestion_payload(session, top)

    @app.post("/sessions/{session_id}/confirmations")
    def confirm(session_id: str, body: PairBody):
        session, lock = store.get(session_id)
        with lock:
            session.confirm(body.source_attr, body.dest_attr)
            return _suggestion_payload(session, None)

    @app.post("/sessions/{session_id}/rejections")
    def reject(session_id: str, body: PairBody):
        session, lock = store.get(session_id)
        with lock:
            session.reject(body.source_attr, body.dest_attr)
            return _suggestion_payload(session, None)

    @app.get("/sessions/{session_id}/matrix.csv")
    def get_matrix_csv(session_id: str):
        from .ensemble import matrix_to_csv

        session, lock = store.get(session_id)
        with lock:
            return PlainTextResponse(
                matrix_to_csv(session.matrix), media_type="text/csv"
            )

    @app.get("/sessions/{session_id}/matrix")
    def get_matrix(session_id: str):
        session, lock = store.get(session_id)
        with lock:
            return {
                "session_id": session.id,
                "config_fingerprint": session.matrix.config_fingerprint,
                "pairs": [
                    {
                        "source_attr": p.source_attr,
                        "dest_attr": p.dest_attr,
                        "dk": p.dk,
                        "lin": p.lin,
                        "uni": p.uni,
                        "mul": p.mul,
                        "final": p.final,
                    }
                    for p in session.matrix.pairs
                ],
            }

    @app.get("/sessions/{session_id}/report")
    def get_report(session_id: str, truth_path: str | None = None):
        session, lock = store.get(session_id)
        path = truth_path or store.truth_paths.get(session_id)
        if path is None:
            raise ValueError("no ground truth attached to this session")
        truth = evaluation.load_ground_truth(path)
        with lock:
            report = evaluation.evaluate(
                session.source,
                session.dest,
                truth,
                session.cfg,
                session.rules,
                session.confirmed_pairs(),
            )
            return {
                "session_id": session.id,
                "precision": report.precision,
                "recall": report.recall,
                "f1": report.f1,
                "topn_accuracy": {str(n): v for n, v in report.topn_accuracy.items()},
                "timings_ms": report.timings,
            }

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str):
        store.remove(session_id)
        return {"deleted": session_id}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

        @app.get("/")
        def index():
            # serve under /ui/ so the page's relative asset paths resolve
            return RedirectResponse(url="/ui/")

    return app

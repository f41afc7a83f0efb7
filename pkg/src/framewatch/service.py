"""HTTP facade for the review workflow.

Serves fragment batches with highlight spans, accepts judgments into the
journal (the only writable state), and exposes live precision/error tables
that agree byte-for-byte with the CLI on the same journal snapshot. The
service refuses to start unless the corpus manifest attests the corpus is
anonymized.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Header, HTTPException, Query
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import evaluation as ev
from .corpus import Sentence, ingest
from .evaluation import EvalMatch, Journal
from .patterns import compile_patterns
from .store import load_store

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib


class ManifestError(Exception):
    pass


def check_manifest(corpus_path: str) -> None:
    """Require an `anonymized: true` attestation next to the corpus file."""
    manifest_path = Path(corpus_path).with_suffix(Path(corpus_path).suffix + ".manifest.json")
    if not manifest_path.exists():
        raise ManifestError(
            f"missing corpus manifest {manifest_path}; refusing to serve text that is not attested anonymized"
        )
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    if manifest.get("anonymized") is not True:
        raise ManifestError(f"corpus manifest {manifest_path} lacks an 'anonymized: true' attestation")


def load_tokens(path: str) -> dict[str, str]:
    """tokens.toml maps annotator id -> bearer token, optionally under [tokens]."""
    with open(path, "rb") as fh:
        parsed = tomllib.load(fh)
    table = parsed.get("tokens", parsed)
    return {str(k): str(v) for k, v in table.items()}


class JudgmentBody(BaseModel):
    match_id: str
    annotator_id: str
    round: str
    verdict: str
    violence_type: Optional[str] = None


@dataclass
class ServiceState:
    journal_path: str
    journal: Journal
    matches: dict[str, EvalMatch]
    sentences: dict[tuple[str, str], Sentence]
    pattern_notes: dict[str, str]
    tokens: dict[str, str]
    lock: threading.Lock


def fragment_view(match: EvalMatch, sentence: Optional[Sentence], state: ServiceState) -> dict:
    """Renderable fragment: text plus target/fe/filler highlight layers."""
    highlights = []
    text = match.text
    if sentence is not None:
        text = sentence.text()
        sets_by_id = {s.id: s for s in sentence.sets}
        anchor = sets_by_id.get(match.anchor_set)
        if anchor is not None:
            start, end = sentence.token_span_to_chars(anchor.target)
            highlights.append({"start": start, "end": end, "layer": "target", "label": anchor.frame_name})
        for role, span, filler_set_id in match.bindings:
            start, end = sentence.token_span_to_chars(tuple(span))
            highlights.append({"start": start, "end": end, "layer": "fe", "label": role})
            filler = sets_by_id.get(filler_set_id)
            if filler is not None:
                f_start, f_end = sentence.token_span_to_chars(filler.target)
                highlights.append({"start": f_start, "end": f_end, "layer": "filler", "label": filler.frame_name})
    return {
        "match_id": match.match_id,
        "text": text,
        "highlights": highlights,
        "pattern_id": match.pattern_id,
        "pattern_name": match.pattern_name,
        "pattern_description": state.pattern_notes.get(match.pattern_id, ""),
    }


def _normalize_round(value: str) -> str:
    if value in ("1", "2"):
        return f"r{value}"
    if value in ("r1", "r2"):
        return value
    raise HTTPException(status_code=422, detail=f"unknown round {value!r}")


def build_app(
    journal_path: str,
    matches_path: str,
    corpus_path: str,
    store_path: str,
    patterns_path: str,
    tokens_path: str,
    static_dir: Optional[str] = None,
) -> FastAPI:
    check_manifest(corpus_path)

    store = load_store(store_path)
    corpus, _ = ingest(corpus_path, store)
    patterns, _ = compile_patterns(patterns_path, store)
    matches = {m.match_id: m for m in ev.load_matches(matches_path)}

    state = ServiceState(
        journal_path=journal_path,
        journal=ev.load_journal(journal_path),
        matches=matches,
        sentences={s.key: s for s in corpus},
        pattern_notes={p.id: p.notes for p in patterns},
        tokens=load_tokens(tokens_path),
        lock=threading.Lock(),
    )

    app = FastAPI(title="framewatch review service")
    app.state.service = state

    def require_annotator(annotator: str, x_auth_token: Optional[str]) -> None:
        expected = state.tokens.get(annotator)
        if expected is None:
            raise HTTPException(status_code=404, detail=f"unknown annotator {annotator!r}")
        if x_auth_token != expected:
            raise HTTPException(status_code=401, detail="missing or wrong token")

    @app.get("/api/batches/{annotator}")
    def get_batch(
        annotator: str,
        round: str = Query("r1"),
        x_auth_token: Optional[str] = Header(default=None),
    ):
        require_annotator(annotator, x_auth_token)
        round_name = _normalize_round(round)
        with state.lock:
            batch = state.journal.batch_for(annotator, round_name)
            if batch is None:
                raise HTTPException(status_code=409, detail=f"round {round_name} has not been assigned")
            judged = {
                j.match_id
                for j in state.journal.judgments.values()
                if j.round == round_name and j.annotator_id == annotator
            }
            views = []
            for match_id in batch.match_ids:
                if match_id in judged:
                    continue
                match = state.matches.get(match_id)
                if match is None:
                    continue
                sentence = state.sentences.get((match.doc_id, match.sent_id))
                views.append(fragment_view(match, sentence, state))
        return views

    @app.post("/api/judgments")
    def post_judgment(body: JudgmentBody, x_auth_token: Optional[str] = Header(default=None)):
        require_annotator(body.annotator_id, x_auth_token)
        round_name = _normalize_round(body.round)
        judgment = ev.Judgment(
            match_id=body.match_id,
            annotator_id=body.annotator_id,
            round=round_name,
            verdict=body.verdict,
            violence_type=body.violence_type,
            timestamp=time.time(),
        )
        try:
            judgment.validate()
        except ev.EvalError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

        with state.lock:
            batch = state.journal.batch_for(body.annotator_id, round_name)
            if batch is None or body.match_id not in batch.match_ids:
                raise HTTPException(status_code=403, detail="match is not in this annotator's batch for this round")
            if round_name == "r2":
                r1 = state.journal.per_match("r1").get(body.match_id)
                if r1 is not None and r1.verdict == "exact":
                    raise HTTPException(
                        status_code=422, detail="round-2 judgments only apply to round-1 non-matches"
                    )
            changed = state.journal.upsert(judgment)
            if changed:
                ev.append_journal(state.journal_path, [judgment.to_record()])
        record = judgment.to_record()
        record.pop("kind", None)
        return JSONResponse(record, status_code=201 if changed else 200)

    @app.get("/api/tables/precision")
    def get_precision(round: str = Query("r1")):
        round_name = _normalize_round(round)
        with state.lock:
            universe = ev.assigned_universe(state.journal, list(state.matches.values()))
            table = ev.precision_table(state.journal, universe, round_name, strict=False)
        return {
            "round": round_name,
            "incomplete": table.incomplete,
            "rows": [
                {"pattern": r.pattern, "correct": r.correct, "error": r.error, "precision": str(r.precision)}
                for r in table.rows
            ],
            "overall": {
                "correct": table.overall.correct,
                "error": table.overall.error,
                "precision": table.overall.precision_text(),
            },
            "tsv": table.to_tsv(),
        }

    @app.get("/api/tables/errors")
    def get_errors(top: int = Query(6)):
        with state.lock:
            table = ev.error_distribution(state.journal.judgments.values(), top)
        return {
            "rows": [
                {"violence_type": r.violence_type, "count": r.count, "percentage": str(r.percentage)}
                for r in table.rows
            ],
            "total": table.total,
            "tsv": table.to_tsv(),
        }

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app

"""Live assistant HTTP service.

The human plays against a real opponent or physical game and relays the
(bulls, cows) feedback each turn; the service tracks the consistent-code
set and suggests the next guess. The service never knows the secret.

Sessions are in-memory with a 1-hour idle TTL. The remaining set is always
recomputed as the filter of the full space through the session history, so
undo is a pop-and-replay.
"""

from __future__ import annotations

import secrets as _secrets
import threading
import time
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.responses import Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .heuristics import Policy, filter_remaining, full_space, policy_score, select_guess
from .rules import (
    MM46,
    Code,
    InvalidCodeError,
    feedback_from_counts,
    parse_display,
    partition_counts,
    decode,
)
from .weights_io import make_policy

SESSION_TTL_SECONDS = 3600

POLICY_NAMES = {
    "staged-paper": ("staged:staged-paper", False),
    "fixed-paper": ("fixed:fixed-paper", False),
    "shannon": ("shannon", False),
    "knuth": ("knuth", False),
    "most-parts": ("most-parts", False),
}


def resolve_policy(name: str) -> Policy:
    try:
        spec, force = POLICY_NAMES[name]
    except KeyError:
        raise HTTPException(404, f"unknown policy {name!r}") from None
    return make_policy(spec, force_opening=force)


@dataclass
class Session:
    id: str
    policy_name: str
    policy: Policy
    remaining: np.ndarray
    turn: int = 1
    history: list[tuple[Code, tuple[int, int]]] = field(default_factory=list)
    status: str = "active"  # active | solved | contradicted
    suggestion: Code | None = None
    last_used: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def suggest(self) -> Code | None:
        if self.status != "active":
            return None
        self.suggestion = select_guess(self.remaining, self.turn, self.policy).guess
        return self.suggestion

    def replay(self) -> None:
        """Recompute remaining/turn/status from history (undo support)."""
        rem = full_space()
        status = "active"
        for guess, (bulls, cows) in self.history:
            fb = feedback_from_counts(bulls, cows)
            if rem.size:
                rem = filter_remaining(rem, guess, fb)
            if bulls == MM46.n:
                status = "solved"
            elif rem.size == 0:
                status = "contradicted"
        self.remaining = np.asarray(rem, dtype=np.int64)
        self.turn = len(self.history) + 1
        self.status = status


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, policy_name: str) -> Session:
        session = Session(
            id=_secrets.token_hex(8),
            policy_name=policy_name,
            policy=resolve_policy(policy_name),
            remaining=full_space(),
        )
        session.suggest()
        with self._lock:
            self._prune()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._prune()
            session = self._sessions.get(session_id)
        if session is None:
            raise HTTPException(404, f"unknown session {session_id!r}")
        session.last_used = time.monotonic()
        return session

    def delete(self, session_id: str) -> None:
        with self._lock:
            if self._sessions.pop(session_id, None) is None:
                raise HTTPException(404, f"unknown session {session_id!r}")

    def _prune(self) -> None:
        cutoff = time.monotonic() - SESSION_TTL_SECONDS
        for sid in [s for s, sess in self._sessions.items() if sess.last_used < cutoff]:
            del self._sessions[sid]


class CreateSessionRequest(BaseModel):
    policy: str = "staged-paper"


class FeedbackRequest(BaseModel):
    bulls: int
    cows: int


class WhatIfRequest(BaseModel):
    guess: str


def _state_payload(session: Session) -> dict:
    return {
        "id": session.id,
        "policy": session.policy_name,
        "status": session.status,
        "turn": session.turn,
        "remaining": int(session.remaining.size),
        "suggestion": session.suggestion.display() if session.status == "active" else None,
    }


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="mmind assistant")
    store = SessionStore()
    app.state.sessions = store

    @app.post("/api/sessions")
    def create_session(req: CreateSessionRequest):
        session = store.create(req.policy)
        return _state_payload(session)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        session = store.get(session_id)
        payload = _state_payload(session)
        payload["history"] = [
            {"guess": g.display(), "bulls": b, "cows": c}
            for g, (b, c) in session.history
        ]
        return payload

    @app.post("/api/sessions/{session_id}/feedback")
    def submit_feedback(session_id: str, req: FeedbackRequest):
        session = store.get(session_id)
        with session.lock:
            if session.status != "active":
                raise HTTPException(409, f"session is {session.status}, not active")
            try:
                fb = feedback_from_counts(req.bulls, req.cows)
            except ValueError as exc:
                raise HTTPException(400, str(exc)) from None
            guess = session.suggestion
            session.history.append((guess, (fb.bulls, fb.cows)))
            session.remaining = filter_remaining(session.remaining, guess, fb)
            session.turn += 1
            if fb.bulls == MM46.n:
                session.status = "solved"
            elif session.remaining.size == 0:
                session.status = "contradicted"
            else:
                session.suggest()
            payload = _state_payload(session)
            if session.status == "contradicted":
                payload["explanation"] = (
                    "No code is consistent with every feedback entered so far; "
                    "at least one response was mistyped. Undo the wrong turn."
                )
            return payload

    @app.post("/api/sessions/{session_id}/undo")
    def undo(session_id: str):
        session = store.get(session_id)
        with session.lock:
            if not session.history:
                raise HTTPException(409, "nothing to undo")
            session.history.pop()
            session.replay()
            session.suggest()
            return _state_payload(session)

    @app.get("/api/sessions/{session_id}/candidates")
    def candidates(session_id: str, limit: int = 20):
        session = store.get(session_id)
        if limit < 0:
            raise HTTPException(400, "limit must be >= 0")
        head = session.remaining[:limit]
        return {
            "codes": [decode(int(i)).display() for i in head],
            "total": int(session.remaining.size),
        }

    @app.post("/api/sessions/{session_id}/what-if")
    def what_if(session_id: str, req: WhatIfRequest):
        session = store.get(session_id)
        if session.status != "active":
            raise HTTPException(409, f"session is {session.status}, not active")
        try:
            guess = parse_display(req.guess)
        except InvalidCodeError as exc:
            raise HTTPException(400, str(exc)) from None
        counts = partition_counts(guess, [decode(int(i)) for i in session.remaining])
        return {
            "guess": guess.display(),
            "counts": list(counts.counts),
            "probabilities": [c / counts.total for c in counts.counts],
            "score": policy_score(counts, session.policy, session.turn),
        }

    @app.delete("/api/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        store.delete(session_id)
        return Response(status_code=204)

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app

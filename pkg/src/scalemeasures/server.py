"""HTTP service exposing exploration sessions.

Sessions live in memory, keyed by a short hex id.  Every mutation bumps
a per-session revision; answer requests must quote the revision they
saw, so two browser tabs cannot answer the same query twice.  With a
snapshot directory configured, each session is also mirrored to a JSON
file and reloaded on startup.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException, Response
from pydantic import BaseModel, Field

from . import __version__
from .errors import FcaError, FormatError, RejectedCounterexampleError
from .explore import (Accept, Counterexample, ExplorationLimits,
                      ExplorationSession)
from .export import lattice_graph
from .formats import context_from_doc, parse_cxt, write_cxt


class SessionCreate(BaseModel):
    name: str | None = None
    context_text: str | None = Field(
        default=None, description="Context as cxt cross-table text.")
    context: dict | None = Field(
        default=None, description="Context as a JSON document.")
    order: list[str] | None = None
    init_base: bool = True
    max_queries: int | None = None
    max_scale_attributes: int | None = None


class AnswerRequest(BaseModel):
    revision: int
    accept: bool = False
    counterexample: list[str] | None = None


class _Held:
    """A session plus the bookkeeping the API layer needs."""

    def __init__(self, sid: str, name: str, session: ExplorationSession):
        self.id = sid
        self.name = name
        self.session = session
        self.revision = 0
        self.created_at = time.time()
        self.updated_at = self.created_at
        self.lock = threading.Lock()

    def touch(self) -> None:
        self.revision += 1
        self.updated_at = time.time()

    def resource(self) -> dict:
        s = self.session
        query = s.current_query()
        base_extents = s.base.concept_count()
        reflected = len(s.reflected_family())
        return {
            "id": self.id,
            "name": self.name,
            "revision": self.revision,
            "created_at": self.created_at,
            "updated_at": self.updated_at,
            "done": s.done,
            "truncated": s.truncated,
            "query": None if query is None else {
                "premise": sorted(query.premise),
                "conclusion": sorted(query.conclusion),
                "shared_intent": sorted(query.shared_intent),
                "candidates": sorted(query.candidates),
            },
            "progress": {
                "queries_answered": len(s.history),
                "accepts": s.accept_count(),
                "counterexamples": s.counterexample_count(),
                "scale_attributes": len(s.scale_attribute_extents()),
                "reflected_extents": reflected,
                "base_extents": base_extents,
            },
            "objects": list(s.base.objects),
            "attributes": list(s.base.attributes),
            "scale_attribute_extents": [sorted(e)
                                        for e in s.scale_attribute_extents()],
            "history": s.to_doc()["history"],
            "limits": {"max_queries": s.limits.max_queries,
                       "max_scale_attributes": s.limits.max_scale_attributes},
        }

    def summary(self) -> dict:
        s = self.session
        return {
            "id": self.id,
            "name": self.name,
            "revision": self.revision,
            "created_at": self.created_at,
            "updated_at": self.updated_at,
            "done": s.done,
            "truncated": s.truncated,
            "objects": len(s.base.objects),
            "queries_answered": len(s.history),
        }


def create_app(snapshot_dir: str | None = None,
               cors_origins: tuple[str, ...] = (),
               ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="scalemeasures", version=__version__)
    held: dict[str, _Held] = {}
    registry_lock = threading.Lock()
    snapshots = Path(snapshot_dir) if snapshot_dir else None

    if cors_origins:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(CORSMiddleware, allow_origins=list(cors_origins),
                           allow_methods=["*"], allow_headers=["*"])

    def persist(h: _Held) -> None:
        if snapshots is None:
            return
        snapshots.mkdir(parents=True, exist_ok=True)
        doc = h.session.to_doc()
        doc["id"] = h.id
        doc["name"] = h.name
        doc["revision"] = h.revision
        doc["created_at"] = h.created_at
        (snapshots / f"{h.id}.json").write_text(json.dumps(doc))

    def restore() -> None:
        if snapshots is None or not snapshots.is_dir():
            return
        for path in sorted(snapshots.glob("*.json")):
            try:
                doc = json.loads(path.read_text())
                session = ExplorationSession.from_doc(doc)
            except (OSError, ValueError, KeyError, FcaError):
                continue
            h = _Held(doc.get("id", path.stem), doc.get("name", path.stem),
                      session)
            h.revision = doc.get("revision", len(session.history))
            h.created_at = doc.get("created_at", h.created_at)
            held[h.id] = h

    restore()

    def lookup(sid: str) -> _Held:
        h = held.get(sid)
        if h is None:
            raise HTTPException(status_code=404,
                                detail=f"no session with id {sid!r}")
        return h

    @app.get("/api/v1/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__,
                "sessions": len(held)}

    @app.post("/api/v1/sessions", status_code=201)
    def create_session(req: SessionCreate) -> dict:
        if (req.context_text is None) == (req.context is None):
            raise HTTPException(
                status_code=422,
                detail="provide exactly one of context_text or context")
        try:
            if req.context_text is not None:
                ctx = parse_cxt(req.context_text)
            else:
                ctx = context_from_doc(req.context)
            if ctx.n_attributes == 0:
                raise FormatError("context declares no attributes")
            limits = ExplorationLimits(
                max_queries=req.max_queries,
                max_scale_attributes=req.max_scale_attributes)
            session = ExplorationSession(ctx, init_base=req.init_base,
                                         order=req.order, limits=limits)
        except FcaError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        sid = uuid.uuid4().hex[:12]
        h = _Held(sid, req.name or ctx.name or sid, session)
        with registry_lock:
            held[sid] = h
        persist(h)
        return h.resource()

    @app.get("/api/v1/sessions")
    def list_sessions() -> list[dict]:
        with registry_lock:
            rows = sorted(held.values(), key=lambda h: h.created_at)
        return [h.summary() for h in rows]

    @app.get("/api/v1/sessions/{sid}")
    def get_session(sid: str) -> dict:
        return lookup(sid).resource()

    @app.post("/api/v1/sessions/{sid}/answer")
    def answer(sid: str, req: AnswerRequest) -> dict:
        h = lookup(sid)
        with h.lock:
            if req.revision != h.revision:
                raise HTTPException(
                    status_code=409,
                    detail={"message": "revision is stale",
                            "current_revision": h.revision})
            if req.accept == (req.counterexample is not None):
                raise HTTPException(
                    status_code=422,
                    detail="provide exactly one of accept or counterexample")
            try:
                if req.accept:
                    h.session.answer(Accept())
                else:
                    h.session.answer(
                        Counterexample(frozenset(req.counterexample)))
            except RejectedCounterexampleError as exc:
                raise HTTPException(
                    status_code=422,
                    detail={"message": str(exc),
                            "offending": sorted(exc.offending)})
            except FcaError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            h.touch()
            persist(h)
            return h.resource()

    @app.get("/api/v1/sessions/{sid}/lattice")
    def scale_lattice(sid: str) -> dict:
        h = lookup(sid)
        with h.lock:
            graph = lattice_graph(h.session.scale_context())
            return graph.to_doc()

    @app.get("/api/v1/sessions/{sid}/export")
    def export(sid: str, format: str = "json") -> Response:
        h = lookup(sid)
        with h.lock:
            if format == "cxt":
                body = write_cxt(h.session.scale_context())
                return Response(content=body, media_type="text/plain")
            if format == "json":
                return Response(content=json.dumps(h.session.to_doc()),
                                media_type="application/json")
            if format == "dot":
                from .export import lattice_to_dot

                body = lattice_to_dot(lattice_graph(h.session.scale_context()))
                return Response(content=body, media_type="text/vnd.graphviz")
        raise HTTPException(status_code=422,
                            detail=f"unknown export format {format!r}")

    @app.delete("/api/v1/sessions/{sid}", status_code=204)
    def delete_session(sid: str) -> Response:
        h = lookup(sid)
        with registry_lock:
            held.pop(sid, None)
        if snapshots is not None:
            (snapshots / f"{h.id}.json").unlink(missing_ok=True)
        return Response(status_code=204)

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app

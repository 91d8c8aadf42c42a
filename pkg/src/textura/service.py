"""HTTP API over the pipeline.

Endpoints (JSON unless noted):
    POST /api/sessions {concept, word, letter, seed?}   201 | 422
    POST /api/sessions/{id}/adjust {scale?, background?} 200 | 404 | 422
    GET  /api/sessions/{id}/image.png                    PNG bytes
    GET  /api/sessions/{id}                              metadata JSON
    GET  /api/healthz                                    "ok"

When a frontend directory is provided its static files are served at /.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, HTTPException, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .compositor import InvalidColor, parse_hex_color
from .pipeline import (
    InvalidInputs,
    InvalidScale,
    NotYetGenerated,
    Pipeline,
    Session,
    SessionInputs,
    UnknownSession,
)
from .provider import DecodeError, ProviderRejected, ProviderTimeout

__all__ = ["create_app"]


class GenerateBody(BaseModel):
    concept: str
    word: str
    letter: str
    seed: int | None = None


class AdjustBody(BaseModel):
    scale: float | None = None
    background: str | None = None


def _image_url(session_id: str) -> str:
    return f"/api/sessions/{session_id}/image.png"


def _session_summary(session: Session) -> dict:
    from .compositor import format_hex_color

    return {
        "id": session.id,
        "image_url": _image_url(session.id),
        "scale": session.scale,
        "background": format_hex_color(session.background),
    }


def create_app(pipeline: Pipeline, frontend_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="textura", docs_url=None, redoc_url=None)

    @app.get("/api/healthz")
    def healthz() -> Response:
        return Response(content="ok", media_type="text/plain")

    @app.post("/api/sessions", status_code=201)
    def create_session(body: GenerateBody) -> dict:
        try:
            inputs = SessionInputs(
                concept=body.concept, word=body.word, letter=body.letter
            )
        except InvalidInputs as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        try:
            session = pipeline.generate(inputs, seed=body.seed)
        except (ProviderTimeout, ProviderRejected, DecodeError) as exc:
            raise HTTPException(status_code=502, detail=str(exc)) from None
        return _session_summary(session)

    @app.post("/api/sessions/{session_id}/adjust")
    def adjust_session(session_id: str, body: AdjustBody) -> dict:
        background = None
        if body.background is not None:
            try:
                background = parse_hex_color(body.background)
            except InvalidColor as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from None
        try:
            pipeline.adjust(session_id, new_scale=body.scale, new_background=background)
        except UnknownSession:
            raise HTTPException(status_code=404, detail="unknown session") from None
        except InvalidScale as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        except NotYetGenerated:
            raise HTTPException(
                status_code=409, detail="session has no composed image"
            ) from None
        return _session_summary(pipeline.get_session(session_id))

    @app.get("/api/sessions/{session_id}/image.png")
    def session_image(session_id: str) -> Response:
        try:
            data = pipeline.export_png(session_id)
        except UnknownSession:
            raise HTTPException(status_code=404, detail="unknown session") from None
        except NotYetGenerated:
            raise HTTPException(
                status_code=409, detail="session has no composed image"
            ) from None
        return Response(content=data, media_type="image/png")

    @app.get("/api/sessions/{session_id}")
    def session_metadata(session_id: str) -> dict:
        try:
            session = pipeline.get_session(session_id)
        except UnknownSession:
            raise HTTPException(status_code=404, detail="unknown session") from None
        doc = session.to_json_dict()
        doc["image_url"] = _image_url(session.id)
        return doc

    if frontend_dir and os.path.isdir(frontend_dir):
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="frontend")

    return app

"""HTTP and WebSocket surface.

Thin translation layer: parse the wire format, call the engine, map
package errors to status codes. Heavy work runs in the threadpool so
the event loop stays free for WebSocket traffic.

Live events per session are fanned out through an in-process bus; the
engine publishes from worker threads, subscribers drain asyncio queues.
"""

from __future__ import annotations

import asyncio
import json
import threading
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, File, Form, Request, UploadFile, WebSocket
from fastapi.concurrency import run_in_threadpool
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from starlette.websockets import WebSocketDisconnect

from innerself.audio import read_wav_bytes
from innerself.errors import AdapterUnavailable, InnerSelfError
from innerself.service.config import ServiceConfig
from innerself.service.engine import TurnEngine
from innerself.service.openapi import decorate_openapi
from innerself.voiceclone.enrollment import UNREADABLE

TRANSCRIPT_HINT_HEADER = "x-innerself-transcript"

_STATUS_BY_CODE = {
    "BUSY": 409,
    "UNKNOWN_SESSION": 404,
    "EMPTY_UTTERANCE": 422,
    "EMPTY_TRANSCRIPT": 422,
    "NO_VALID_SAMPLES": 422,
    "EMPTY_TEXT": 422,
    "CLIP_TOO_SHORT": 422,
    "SILENT_CLIP": 422,
    "OVERSIZE_APPEND": 413,
    "ADAPTER_UNAVAILABLE": 503,
    "STORE_UNAVAILABLE": 503,
    "SCRIPT_PARSE": 400,
    "CHUNK_MISSING": 500,
    "CHECKSUM_MISMATCH": 500,
    "TABLE_FORMAT": 500,
    "CONTEXT_OVERFLOW": 500,
}


class EventBus:
    """Thread-safe fan-out of engine events to WebSocket subscribers."""

    def __init__(self):
        self._lock = threading.Lock()
        self._subscribers: dict[str, list[asyncio.Queue]] = {}
        self._loop: asyncio.AbstractEventLoop | None = None

    def attach_loop(self, loop: asyncio.AbstractEventLoop) -> None:
        self._loop = loop

    def publish(self, session_id: str, event: dict) -> None:
        loop = self._loop
        if loop is None:
            return
        with self._lock:
            queues = list(self._subscribers.get(session_id, ()))
        for queue in queues:
            loop.call_soon_threadsafe(queue.put_nowait, event)

    def subscribe(self, session_id: str) -> asyncio.Queue:
        queue: asyncio.Queue = asyncio.Queue()
        with self._lock:
            self._subscribers.setdefault(session_id, []).append(queue)
        return queue

    def unsubscribe(self, session_id: str, queue: asyncio.Queue) -> None:
        with self._lock:
            queues = self._subscribers.get(session_id, [])
            if queue in queues:
                queues.remove(queue)
            if not queues:
                self._subscribers.pop(session_id, None)


def _error_response(exc: InnerSelfError) -> JSONResponse:
    status = _STATUS_BY_CODE.get(exc.code, 400)
    body = {"error": {"code": exc.code, "message": str(exc)}}
    headers = {}
    if isinstance(exc, AdapterUnavailable):
        body["error"]["retry_after"] = exc.retry_after
        headers["Retry-After"] = str(int(exc.retry_after))
    return JSONResponse(body, status_code=status, headers=headers)


def create_app(
    config: ServiceConfig | None = None, engine: TurnEngine | None = None
) -> FastAPI:
    config = config or ServiceConfig()
    bus = EventBus()
    if engine is None:
        engine = TurnEngine(config, event_sink=bus.publish)
    else:
        engine.set_event_sink(bus.publish)

    @asynccontextmanager
    async def lifespan(_app):
        bus.attach_loop(asyncio.get_running_loop())
        yield

    app = FastAPI(
        title="innerself",
        version="0.1.0",
        openapi_url="/v1/openapi",
        lifespan=lifespan,
    )
    app.state.engine = engine
    app.state.bus = bus

    @app.exception_handler(InnerSelfError)
    async def _handle_package_error(request, exc: InnerSelfError):
        return _error_response(exc)

    @app.get("/v1/health")
    def health():
        return {"status": "ok"}

    @app.post("/v1/sessions", status_code=201)
    async def create_session(request: Request):
        payload = {}
        body = await request.body()
        if body:
            try:
                payload = json.loads(body)
            except ValueError:
                return JSONResponse(
                    {"error": {"code": "BAD_REQUEST", "message": "invalid JSON body"}},
                    status_code=400,
                )
        if not isinstance(payload, dict):
            return JSONResponse(
                {"error": {"code": "BAD_REQUEST", "message": "body must be a JSON object"}},
                status_code=400,
            )
        alpha = payload.get("alpha")
        state = await run_in_threadpool(
            engine.create_session,
            payload.get("user_name"),
            None,
            int(alpha) if alpha is not None else None,
        )
        return engine.session_info(state.session_id)

    @app.get("/v1/sessions/{session_id}")
    def session_info(session_id: str):
        return engine.session_info(session_id)

    @app.post("/v1/sessions/{session_id}/enroll")
    def enroll(
        session_id: str,
        samples: list[UploadFile] = File(...),
        transcripts: list[str] = Form(default=[]),
    ):
        pairs = []
        kept = []
        warnings = []
        for index, upload in enumerate(samples):
            transcript = transcripts[index] if index < len(transcripts) else ""
            try:
                clip = read_wav_bytes(upload.file.read())
            except ValueError:
                warnings.append({"index": index, "code": UNREADABLE})
                continue
            pairs.append((clip, transcript))
            kept.append(index)
        profile, sample_warnings = engine.enroll_voice(session_id, pairs)
        # enroll_voice indexes into the decoded list; map back to upload order
        warnings.extend(
            {"index": kept[w["index"]], "code": w["code"]} for w in sample_warnings
        )
        warnings.sort(key=lambda w: w["index"])
        return {
            "profile": {
                "sample_count": profile.sample_count,
                "created_at": profile.created_at,
                "embedding_dim": int(profile.embedding.shape[0]),
            },
            "warnings": warnings,
        }

    @app.post("/v1/sessions/{session_id}/turn")
    async def turn(session_id: str, request: Request):
        body = await request.body()
        try:
            clip = read_wav_bytes(body)
        except ValueError as exc:
            return JSONResponse(
                {"error": {"code": "BAD_REQUEST", "message": str(exc)}},
                status_code=400,
            )
        hint = request.headers.get(TRANSCRIPT_HINT_HEADER)
        outcome = await run_in_threadpool(
            engine.process_turn, session_id, clip, hint
        )
        return outcome.to_dict()

    @app.get("/v1/sessions/{session_id}/history")
    def history(session_id: str):
        return {"session_id": session_id, "turns": engine.history_dicts(session_id)}

    @app.get("/v1/sessions/{session_id}/trajectory")
    def trajectory(session_id: str):
        return {
            "session_id": session_id,
            "trajectory": engine.trajectory_dicts(session_id),
        }

    @app.get("/v1/sessions/{session_id}/export")
    def export(session_id: str, include_audio: bool = False):
        return engine.export(session_id, include_audio=include_audio)

    @app.get("/v1/audio/{ref}")
    def audio(ref: str):
        wav = engine.find_audio(ref)
        if wav is None:
            return JSONResponse(
                {"error": {"code": "UNKNOWN_AUDIO", "message": f"no audio {ref}"}},
                status_code=404,
            )
        return Response(content=wav, media_type="audio/wav")

    @app.websocket("/v1/sessions/{session_id}/live")
    async def live(websocket: WebSocket, session_id: str):
        await websocket.accept()
        # belt and braces: a client may connect before any lifespan ran
        bus.attach_loop(asyncio.get_running_loop())
        queue = bus.subscribe(session_id)
        try:
            while True:
                event = await queue.get()
                await websocket.send_json(event)
        except WebSocketDisconnect:
            pass
        finally:
            bus.unsubscribe(session_id, queue)

    webapp_dir = config.webapp_dir and Path(config.webapp_dir)
    if webapp_dir and webapp_dir.is_dir():
        app.mount("/app", StaticFiles(directory=webapp_dir, html=True), name="app")

    _generate_openapi = app.openapi

    def _openapi_with_schemas():
        if app.openapi_schema is None:
            decorate_openapi(_generate_openapi())
        return app.openapi_schema

    app.openapi = _openapi_with_schemas

    return app

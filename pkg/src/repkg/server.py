"""HTTP/WebSocket front for the session service.

Endpoints:
  * ``GET /api/session`` — WebSocket carrying JSON envelopes; a connection
    is bound to at most one session (opened by its first ``open`` envelope).
  * ``POST /api/command`` — the same envelopes for scripting; replies with
    a JSON array of messages. Command payloads name their ``sessionId``.
  * ``GET /`` and static files — the bundled UI directory, when configured.

Analysis commands run in a worker thread so one long refactoring does not
stall other sessions.
"""

from __future__ import annotations

import asyncio
import json
import logging
from pathlib import Path

from aiohttp import WSMsgType, web

from .session import SessionManager

logger = logging.getLogger(__name__)

SESSIONS_KEY = web.AppKey("sessions", SessionManager)
UI_DIR_KEY = web.AppKey("ui_dir", Path)


def build_app(ui_dir: str | Path | None = None) -> web.Application:
    app = web.Application()
    app[SESSIONS_KEY] = SessionManager()
    app.router.add_get("/api/session", websocket_handler)
    app.router.add_post("/api/command", command_handler)
    app.router.add_get("/", index_handler)
    if ui_dir is not None and Path(ui_dir).is_dir():
        app[UI_DIR_KEY] = Path(ui_dir)
        app.router.add_static("/ui", Path(ui_dir))
    return app


async def websocket_handler(request: web.Request) -> web.WebSocketResponse:
    ws = web.WebSocketResponse()
    await ws.prepare(request)
    manager: SessionManager = request.app[SESSIONS_KEY]
    session_id: int | None = None
    loop = asyncio.get_running_loop()
    try:
        async for message in ws:
            if message.type != WSMsgType.TEXT:
                continue
            try:
                envelope = json.loads(message.data)
            except json.JSONDecodeError:
                await ws.send_json({"type": "error", "code": "bad-envelope",
                                    "message": "not valid JSON"})
                continue
            session_id, replies = await loop.run_in_executor(
                None, manager.handle_envelope, envelope, session_id)
            for reply in replies:
                await ws.send_json(reply)
    finally:
        if session_id is not None:
            manager.close_session(session_id)
    return ws


async def command_handler(request: web.Request) -> web.Response:
    manager: SessionManager = request.app[SESSIONS_KEY]
    try:
        envelope = await request.json()
    except json.JSONDecodeError:
        return web.json_response(
            [{"type": "error", "code": "bad-envelope", "message": "not valid JSON"}],
            status=400)
    loop = asyncio.get_running_loop()
    _, replies = await loop.run_in_executor(None, manager.handle_envelope, envelope, None)
    status = 400 if any(r.get("type") == "error" for r in replies) else 200
    return web.json_response(replies, status=status)


_PLACEHOLDER = """<!doctype html>
<html><head><title>repkg</title></head>
<body><h1>repkg analysis service</h1>
<p>WebSocket endpoint: <code>/api/session</code> &mdash;
HTTP endpoint: <code>POST /api/command</code>.</p>
<p>No UI bundle configured; start with <code>--ui-dir</code> to serve one.</p>
</body></html>
"""


async def index_handler(request: web.Request) -> web.Response:
    ui_dir: Path | None = request.app.get(UI_DIR_KEY)
    if ui_dir is not None and (ui_dir / "index.html").is_file():
        # keep the bundle under /ui/ so its relative asset URLs resolve
        raise web.HTTPFound("/ui/index.html")
    return web.Response(text=_PLACEHOLDER, content_type="text/html")


async def _serve_forever(app: web.Application, port: int) -> None:
    runner = web.AppRunner(app)
    await runner.setup()
    site = web.TCPSite(runner, port=port)
    await site.start()
    bound = [s.getsockname()[1] for s in (site._server.sockets or [])]  # noqa: SLF001
    print(f"listening on port {bound[0] if bound else port}", flush=True)
    try:
        await asyncio.Event().wait()
    finally:
        await runner.cleanup()


def serve(port: int = 8081, ui_dir: str | Path | None = None) -> int:
    """Run the service until interrupted. Returns a process exit code.

    Binds before printing so ``--port 0`` reports the OS-assigned port;
    a busy port exits with code 3 and SIGINT shuts down cleanly with 0.
    """
    app = build_app(ui_dir)
    try:
        asyncio.run(_serve_forever(app, port))
    except OSError as exc:
        logger.error("cannot bind port %s: %s", port, exc)
        return 3
    except KeyboardInterrupt:
        return 0
    return 0

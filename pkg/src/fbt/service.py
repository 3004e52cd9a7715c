"""Live-session websocket service and trial-upload endpoint.

One entry engine per websocket connection. The server owns all entry logic:
clients send raw taps and render whatever feedback and state come back.

Wire protocol (one JSON document per message, no internal newlines):
  server -> client on open:  {"type": "layout", ...layout document...}
  client -> server:          {"type": "tap", "x": .., "y": .., "t": ..}
  server -> client per tap:  {"type": "feedback", "kind": .., "utterance": .., "detail": ..}
                             ... then {"type": "state", "buffer": .., "pending": .., "terminated": ..}
  server -> client on error: {"type": "error", "error": .., "detail": ..}
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from fbt.entry import EntryError, EntryState, TapEvent, new_session, step
from fbt.harness import ReplayError, Session, TrialSpec, replay_trials
from fbt.keys import EntryMode
from fbt.layout import LayoutError, LayoutSpec, layout_to_dict, with_mode


def _state_message(state: EntryState) -> dict:
    pending = None
    if state.pending is not None:
        pending = {
            "region": state.pending.region.value,
            "selected": state.pending.selected,
            "press_count": state.pending.press_count,
        }
    return {
        "type": "state",
        "buffer": state.buffer,
        "pending": pending,
        "terminated": state.terminated,
    }


def _resolve_mode(value: str | None, default: EntryMode) -> EntryMode:
    if value is None:
        return default
    return EntryMode(value)


def create_app(layout: LayoutSpec, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="fbt live session service")

    @app.get("/api/layout")
    async def get_layout(mode: str | None = None) -> JSONResponse:
        try:
            resolved = with_mode(layout, _resolve_mode(mode, layout.mode))
        except ValueError:
            return JSONResponse({"error": f"unknown mode {mode!r}"}, status_code=400)
        return JSONResponse(layout_to_dict(resolved))

    @app.post("/api/trials")
    async def upload_trial(request: Request) -> JSONResponse:
        try:
            doc = await request.json()
        except json.JSONDecodeError:
            return JSONResponse({"error": "invalid JSON"}, status_code=400)
        try:
            mode = _resolve_mode(doc.get("technique"), layout.mode)
            taps = tuple(
                TapEvent(x=float(t["x"]), y=float(t["y"]), t=float(t["t"]))
                for t in doc["taps"]
            )
            spec = TrialSpec(presented=str(doc["presented"]), taps=taps)
        except (KeyError, TypeError, ValueError) as exc:
            return JSONResponse({"error": f"malformed trial: {exc}"}, status_code=400)

        session = Session(
            participant_id=str(doc.get("participant_id", "live")),
            technique=mode,
            layout=with_mode(layout, mode),
            trials=(spec,),
        )
        try:
            replayed = replay_trials(session)[0]
        except ReplayError as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        result = replayed.result
        return JSONResponse(
            {
                "presented": replayed.trial.presented,
                "transcribed": replayed.trial.transcribed,
                "wpm": result.wpm,
                "duration_seconds": result.duration_seconds,
                "error_count": result.error_count,
                "correction_count": result.correction_count,
                "complete": result.complete,
            }
        )

    @app.websocket("/ws")
    async def live_session(websocket: WebSocket) -> None:
        await websocket.accept()
        try:
            mode = _resolve_mode(websocket.query_params.get("mode"), layout.mode)
        except ValueError:
            await websocket.send_text(
                json.dumps({"type": "error", "error": "unknown mode", "detail": ""})
            )
            await websocket.close()
            return

        session_layout = with_mode(layout, mode)
        state = new_session(mode)
        await websocket.send_text(
            json.dumps({"type": "layout", **layout_to_dict(session_layout)})
        )
        try:
            while True:
                raw = await websocket.receive_text()
                try:
                    msg = json.loads(raw)
                except json.JSONDecodeError:
                    await websocket.send_text(
                        json.dumps({"type": "error", "error": "parse", "detail": "invalid JSON"})
                    )
                    continue
                if not isinstance(msg, dict) or msg.get("type") != "tap":
                    await websocket.send_text(
                        json.dumps({"type": "error", "error": "unexpected message", "detail": str(msg)[:100]})
                    )
                    continue
                try:
                    tap = TapEvent(x=float(msg["x"]), y=float(msg["y"]), t=float(msg["t"]))
                    state, events = step(state, session_layout, tap)
                except (KeyError, TypeError, ValueError, EntryError, LayoutError) as exc:
                    await websocket.send_text(
                        json.dumps({"type": "error", "error": type(exc).__name__, "detail": str(exc)})
                    )
                    continue
                for event in events:
                    await websocket.send_text(
                        json.dumps(
                            {
                                "type": "feedback",
                                "kind": event.kind.value,
                                "utterance": event.utterance,
                                "detail": event.detail,
                            }
                        )
                    )
                await websocket.send_text(json.dumps(_state_message(state)))
        except WebSocketDisconnect:
            return

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app

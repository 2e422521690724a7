"""Session-oriented message protocol service.

One request/reply JSON document per line, UTF-8, schema-versioned. Each
session owns one engine instance. Agent sessions are lockstep (the sim
advances only on `step`); human-play sessions run a wall-clock pacer at 50
ticks/s and translate `human_input` commands into actions applied at tick
boundaries, recording a trajectory that replays deterministically.

Transports: stdio (one client), TCP socket, and a minimal HTTP bridge for
the browser client (POST /message with the same document).
"""
from __future__ import annotations

import base64
import io
import json
import socketserver
import sys
import threading
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .catalog import load_catalog, load_env_features
from .constants import TICK_DT, TICKS_PER_ACTION
from .env import MODALITIES
from .level import (
    LevelValidationError,
    canonical_json,
    difficulty,
    export_editor_document,
    import_editor_export,
    load_level,
)
from .obs import flatten, render_pixels, render_text
from .obs.text import strip_private
from .sim.actions import Action, execute
from .sim.engine import Engine
from .trajectory import TrajectoryWriter, observation_digest

PROTOCOL_SCHEMA_VERSION = 1

_REALTIME_TICK_SECONDS = TICK_DT  # 50 ticks/s wall clock


class ProtocolError(Exception):
    def __init__(self, message: str, code: str = "bad_request"):
        super().__init__(message)
        self.code = code


def _frame_png(frame) -> str:
    from PIL import Image

    buf = io.BytesIO()
    Image.fromarray(frame, mode="RGB").save(buf, format="PNG")
    return base64.b64encode(buf.getvalue()).decode("ascii")


def _parse_action(payload) -> Action:
    if not isinstance(payload, dict):
        raise ProtocolError("action must be an object {x, y, action}")
    try:
        return Action(float(payload["x"]), float(payload["y"]),
                      int(payload["action"])).clamped()
    except (KeyError, TypeError, ValueError) as exc:
        raise ProtocolError(f"malformed action: {exc}") from exc


@dataclass
class Session:
    session_id: str
    engine: Engine
    level_ref: str
    seed: int
    modality: str
    mode: str  # "agent" | "human"
    structured_encoding: str = "list"  # "list" | "f32_base64"
    lock: threading.Lock = field(default_factory=threading.Lock)
    done_notified: bool = False
    # trajectory recording
    writer: TrajectoryWriter | None = None
    stream: object = None
    # human mode bookkeeping
    pending_inputs: list[Action] = field(default_factory=list)
    pacer: threading.Thread | None = None
    pacer_stop: threading.Event = field(default_factory=threading.Event)
    open_record: dict | None = None
    accrued_reward: float = 0.0

    def observation(self, modality: str | None = None):
        modality = modality or self.modality
        if modality == "text":
            return strip_private(render_text(self.engine))
        if modality == "structured":
            vec = flatten(self.engine)
            if self.structured_encoding == "f32_base64":
                data = base64.b64encode(vec.astype("<f4", copy=False).tobytes())
                return {"format": "f32_base64", "length": int(vec.shape[0]),
                        "data": data.decode("ascii")}
            return [float(v) for v in vec]
        if modality == "pixels":
            return {"format": "png_base64", "data": _frame_png(render_pixels(self.engine))}
        raise ProtocolError(f"unknown modality {modality!r}")


class SessionRegistry:
    """Protocol command dispatch over a set of engine sessions."""

    def __init__(self, config_dir: str | Path | None = None):
        self.config_dir = config_dir
        self.catalog = load_catalog(config_dir)
        self.features = load_env_features(config_dir)
        self.sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._counter = 0

    # -- session plumbing ---------------------------------------------------

    def _new_session_id(self) -> str:
        with self._lock:
            self._counter += 1
            return f"s{self._counter:04d}"

    def _get(self, session_id) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise ProtocolError(f"unknown session {session_id!r}", code="unknown_session")
        return session

    def close_all(self) -> None:
        for sid in list(self.sessions):
            try:
                self._cmd_close(self._get(sid), {})
            except ProtocolError:
                pass

    # -- command handlers ------------------------------------------------------

    def handle(self, request: dict) -> dict:
        reply: dict = {"schema_version": PROTOCOL_SCHEMA_VERSION}
        if "id" in request:
            reply["id"] = request["id"]
        try:
            if not isinstance(request, dict):
                raise ProtocolError("request must be a JSON object")
            if request.get("schema_version") not in (None, PROTOCOL_SCHEMA_VERSION):
                raise ProtocolError(
                    f"unsupported schema_version {request.get('schema_version')}",
                    code="bad_version")
            command = request.get("command")
            payload = request.get("payload") or {}
            if command == "create":
                session_id, result = self._cmd_create(payload)
                reply.update(status="ok", session=session_id, payload=result)
                return reply
            if command == "editor_import":
                reply.update(status="ok", payload=self._cmd_editor_import(payload))
                return reply
            if command == "levels":
                reply.update(status="ok", payload=self._cmd_levels())
                return reply
            session = self._get(request.get("session"))
            with session.lock:
                handler = {
                    "reset": self._cmd_reset,
                    "step": self._cmd_step,
                    "observe": self._cmd_observe,
                    "render": self._cmd_render,
                    "record": self._cmd_record,
                    "close": self._cmd_close,
                    "human_input": self._cmd_human_input,
                    "status": self._cmd_status,
                }.get(command)
                if handler is None:
                    raise ProtocolError(f"unknown command {command!r}", code="unknown_command")
                result = handler(session, payload)
            reply.update(status="ok", session=session.session_id, payload=result)
            return reply
        except ProtocolError as exc:
            reply.update(status="error",
                         payload={"error": str(exc), "code": exc.code})
            return reply
        except LevelValidationError as exc:
            reply.update(status="error",
                         payload={"error": str(exc), "code": "invalid_level"})
            return reply

    def _cmd_create(self, payload: dict):
        level_ref = payload.get("level", "Lv1")
        seed = int(payload.get("seed", 0))
        modality = payload.get("modality", "text")
        if modality not in MODALITIES:
            raise ProtocolError(f"unknown modality {modality!r}")
        mode = payload.get("mode", "agent")
        if mode not in ("agent", "human"):
            raise ProtocolError(f"unknown mode {mode!r}")
        encoding = payload.get("structured_encoding", "list")
        if encoding not in ("list", "f32_base64"):
            raise ProtocolError(f"unknown structured_encoding {encoding!r}")
        if isinstance(level_ref, dict):
            level = import_editor_export(level_ref)
        else:
            level = load_level(level_ref, self.config_dir)
        engine = Engine(level, self.catalog, seed=seed)
        session = Session(session_id=self._new_session_id(), engine=engine,
                          level_ref=level.level_id, seed=seed,
                          modality=modality, mode=mode,
                          structured_encoding=encoding)
        record_path = payload.get("record")
        if record_path is None and mode == "human" and self.features.get("human_recording"):
            record_path = f"human_{session.session_id}.jsonl"
        if record_path:
            self._start_recording(session, record_path)
        self.sessions[session.session_id] = session
        if mode == "human":
            self._start_pacer(session)
        return session.session_id, {"observation": session.observation(),
                                    "level": level.level_id, "done": False}

    def _start_recording(self, session: Session, path: str) -> None:
        stream = open(path, "w", encoding="utf-8")
        cadence = TICKS_PER_ACTION if session.mode == "agent" else "human"
        session.stream = stream
        session.writer = TrajectoryWriter(
            level_id=session.level_ref, seed=session.seed, cadence=cadence,
            stream=stream, initial_digest=observation_digest(session.engine))
        session.writer.write_header()
        if session.mode == "human":
            # synthetic opening record so the pre-input span is covered
            session.open_record = {"t": 0, "action": Action(0.0, 0.0, 6),
                                   "error_code": 0}
            session.accrued_reward = 0.0

    def _cmd_reset(self, session: Session, payload: dict):
        if payload.get("seed") is not None:
            session.seed = int(payload["seed"])
        session.engine.reset(session.seed)
        session.done_notified = False
        session.pending_inputs.clear()
        session.accrued_reward = 0.0
        if session.writer is not None:
            session.writer.initial_digest = observation_digest(session.engine)
            if session.mode == "human":
                session.open_record = {"t": 0, "action": Action(0.0, 0.0, 6),
                                       "error_code": 0}
        if session.mode == "human" and (session.pacer is None
                                        or not session.pacer.is_alive()):
            self._start_pacer(session)
        return {"observation": session.observation(), "done": False}

    def _cmd_step(self, session: Session, payload: dict):
        if session.mode != "agent":
            raise ProtocolError("step is only valid on agent sessions; "
                                "use human_input", code="wrong_mode")
        engine = session.engine
        state = engine.state
        if state.done:
            raise ProtocolError("episode finished; reset the session",
                                code="episode_done")
        action = _parse_action(payload.get("action"))
        tick_before = state.step_index
        record = execute(engine, action)
        reward = 0.0
        for _ in range(TICKS_PER_ACTION):
            reward -= engine.tick()
            if state.done:
                break
        if session.writer is not None:
            session.writer.write_step(t=tick_before, action=action,
                                      error_code=record.error_code,
                                      reward=reward, done=state.done,
                                      obs_digest=observation_digest(engine))
        return {
            "observation": session.observation(),
            "reward": reward,
            "done": state.done,
            "info": {
                "Agent_Last_Action_Info": {
                    "Position": {"X": round(record.x, 3), "Y": round(record.y, 3)},
                    "Action_Index": record.action_index,
                    "Is_Success": record.is_success,
                    "Error_Code": record.error_code,
                },
                "victory": state.victory,
                "step_index": state.step_index,
            },
        }

    def _cmd_observe(self, session: Session, payload: dict):
        modality = payload.get("modality")
        state = session.engine.state
        return {"observation": session.observation(modality),
                "done": state.done, "victory": state.victory,
                "tick": state.step_index}

    def _cmd_render(self, session: Session, payload: dict):
        return {"format": "png_base64",
                "data": _frame_png(render_pixels(session.engine))}

    def _cmd_record(self, session: Session, payload: dict):
        if payload.get("enable", True) and payload.get("path"):
            if session.writer is not None:
                raise ProtocolError("already recording", code="recording")
            self._start_recording(session, str(payload["path"]))
            return {"recording": True}
        self._finalize_recording(session)
        return {"recording": False}

    def _cmd_close(self, session: Session, payload: dict):
        # Runs under session.lock; the pacer re-checks the stop flag inside the
        # lock, so it can never act again after this returns.
        session.pacer_stop.set()
        self._finalize_recording(session)
        self.sessions.pop(session.session_id, None)
        return {"closed": True}

    def _cmd_status(self, session: Session, payload: dict):
        state = session.engine.state
        return {"tick": state.step_index, "done": state.done,
                "victory": state.victory, "base_health": state.base_health,
                "gold": state.gold, "mode": session.mode}

    def _cmd_human_input(self, session: Session, payload: dict):
        if session.mode != "human":
            raise ProtocolError("human_input is only valid on human sessions",
                                code="wrong_mode")
        if session.engine.state.done:
            raise ProtocolError("episode finished", code="episode_done")
        action = _parse_action(payload.get("action"))
        session.pending_inputs.append(action)
        return {"queued": True, "tick": session.engine.state.step_index}

    # -- human-mode pacer -----------------------------------------------------

    def _start_pacer(self, session: Session) -> None:
        thread = threading.Thread(target=self._pace, args=(session,),
                                  name=f"pacer-{session.session_id}", daemon=True)
        session.pacer = thread
        thread.start()

    def _pace(self, session: Session) -> None:
        next_tick = time.monotonic()
        while not session.pacer_stop.is_set():
            next_tick += _REALTIME_TICK_SECONDS
            with session.lock:
                if session.pacer_stop.is_set():
                    break
                state = session.engine.state
                if state.done:
                    self._finalize_recording(session)
                    break
                while session.pending_inputs:
                    action = session.pending_inputs.pop(0)
                    record = execute(session.engine, action)
                    self._record_human_action(session, record)
                breaches = session.engine.tick()
                if breaches and session.writer is not None:
                    session.accrued_reward -= breaches
                if state.done:
                    self._finalize_recording(session)
                    break
            delay = next_tick - time.monotonic()
            if delay > 0:
                time.sleep(delay)
            else:
                next_tick = time.monotonic()

    def _record_human_action(self, session: Session, record) -> None:
        if session.writer is None:
            return
        self._flush_open_record(session)
        session.open_record = {
            "t": session.engine.state.step_index,
            "action": Action(record.x, record.y, record.action_index),
            "error_code": record.error_code,
        }

    def _flush_open_record(self, session: Session) -> None:
        if session.writer is None or session.open_record is None:
            return
        open_rec = session.open_record
        state = session.engine.state
        session.writer.write_step(
            t=open_rec["t"], action=open_rec["action"],
            error_code=open_rec["error_code"], reward=session.accrued_reward,
            done=state.done, obs_digest="")
        session.accrued_reward = 0.0
        session.open_record = None

    def _finalize_recording(self, session: Session) -> None:
        if session.writer is None:
            return
        self._flush_open_record(session)
        state = session.engine.state
        if session.mode == "human" and not state.done:
            # closing marker: tells the replayer where the session stopped
            session.writer.write_step(t=state.step_index, action=Action(0.0, 0.0, 6),
                                      error_code=0, reward=0.0, done=False,
                                      obs_digest="")
        session.writer = None
        if session.stream is not None:
            session.stream.close()
            session.stream = None

    # -- sessionless commands ------------------------------------------------

    def _cmd_editor_import(self, payload: dict):
        document = payload.get("document")
        if not isinstance(document, dict):
            raise ProtocolError("editor_import needs a document object")
        level = import_editor_export(document)
        comps = difficulty(level, self.catalog)
        return {
            "level": export_editor_document(level),
            "canonical": canonical_json(export_editor_document(level)),
            "difficulty": {"d_r": comps.d_r, "d_t": comps.d_t,
                           "d_e": comps.d_e, "d_re": comps.d_re,
                           "total": comps.total},
        }

    def _cmd_levels(self):
        from .level import BENCHMARK_LEVEL_IDS

        return {"levels": list(BENCHMARK_LEVEL_IDS)}


# -- transports ----------------------------------------------------------------


def serve_stdio(config_dir=None) -> int:
    registry = SessionRegistry(config_dir)
    try:
        for line in sys.stdin:
            line = line.strip()
            if not line:
                continue
            try:
                request = json.loads(line)
            except json.JSONDecodeError as exc:
                sys.stdout.write(json.dumps({
                    "schema_version": PROTOCOL_SCHEMA_VERSION, "status": "error",
                    "payload": {"error": f"malformed JSON: {exc}",
                                "code": "bad_json"}}) + "\n")
                sys.stdout.flush()
                continue
            reply = registry.handle(request)
            sys.stdout.write(json.dumps(reply) + "\n")
            sys.stdout.flush()
    finally:
        registry.close_all()
    return 0


class _LineHandler(socketserver.StreamRequestHandler):
    def handle(self):
        registry: SessionRegistry = self.server.registry  # type: ignore[attr-defined]
        for raw in self.rfile:
            line = raw.decode("utf-8").strip()
            if not line:
                continue
            try:
                request = json.loads(line)
                reply = registry.handle(request)
            except json.JSONDecodeError as exc:
                reply = {"schema_version": PROTOCOL_SCHEMA_VERSION, "status": "error",
                         "payload": {"error": f"malformed JSON: {exc}",
                                     "code": "bad_json"}}
            self.wfile.write((json.dumps(reply) + "\n").encode("utf-8"))
            self.wfile.flush()


class _TCPServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True


def serve_tcp(port: int, host: str = "127.0.0.1", config_dir=None,
              ready_callback=None) -> int:
    registry = SessionRegistry(config_dir)
    with _TCPServer((host, port), _LineHandler) as server:
        server.registry = registry  # type: ignore[attr-defined]
        if ready_callback is not None:
            ready_callback(server.server_address[1])
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            registry.close_all()
    return 0


class _HTTPHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"  # keep-alive; Content-Length always sent

    def _send(self, status: int, doc: dict) -> None:
        body = json.dumps(doc).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "POST, OPTIONS")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self):  # noqa: N802 (stdlib naming)
        self._send(204, {})

    def do_POST(self):  # noqa: N802
        if self.path.rstrip("/") != "/message":
            self._send(404, {"status": "error",
                             "payload": {"error": "POST /message", "code": "not_found"}})
            return
        length = int(self.headers.get("Content-Length", "0"))
        try:
            request = json.loads(self.rfile.read(length).decode("utf-8"))
        except json.JSONDecodeError as exc:
            self._send(400, {"schema_version": PROTOCOL_SCHEMA_VERSION,
                             "status": "error",
                             "payload": {"error": f"malformed JSON: {exc}",
                                         "code": "bad_json"}})
            return
        registry: SessionRegistry = self.server.registry  # type: ignore[attr-defined]
        self._send(200, registry.handle(request))

    def log_message(self, fmt, *args):
        pass


def serve_http(port: int, host: str = "127.0.0.1", config_dir=None,
               ready_callback=None) -> int:
    registry = SessionRegistry(config_dir)
    with ThreadingHTTPServer((host, port), _HTTPHandler) as server:
        server.registry = registry  # type: ignore[attr-defined]
        if ready_callback is not None:
            ready_callback(server.server_address[1])
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            registry.close_all()
    return 0

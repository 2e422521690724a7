"""Line-delimited protocol client over a towermind server subprocess."""
from __future__ import annotations

import base64
import io
import json
import shutil
import subprocess
import sys
import threading


class ProtocolClientError(RuntimeError):
    pass


def _server_command() -> list[str]:
    exe = shutil.which("towermind")
    if exe:
        return [exe, "serve", "--stdio"]
    return [sys.executable, "-m", "towermind.cli", "serve", "--stdio"]


class ProtocolClient:
    """Owns one server subprocess speaking the stdio transport. One client
    may multiplex many sessions; calls are serialized with a lock."""

    def __init__(self, command: list[str] | None = None):
        self._proc = subprocess.Popen(
            command or _server_command(),
            stdin=subprocess.PIPE, stdout=subprocess.PIPE,
            stderr=subprocess.DEVNULL, text=True, bufsize=1)
        self._lock = threading.Lock()
        self._next_id = 0

    def request(self, command: str, session: str | None = None,
                payload: dict | None = None) -> dict:
        with self._lock:
            self._next_id += 1
            doc = {"schema_version": 1, "id": self._next_id, "command": command}
            if session is not None:
                doc["session"] = session
            if payload is not None:
                doc["payload"] = payload
            if self._proc.poll() is not None:
                raise ProtocolClientError("server process exited")
            self._proc.stdin.write(json.dumps(doc) + "\n")
            self._proc.stdin.flush()
            line = self._proc.stdout.readline()
        if not line:
            raise ProtocolClientError("server closed the stream")
        reply = json.loads(line)
        if reply.get("status") != "ok":
            detail = reply.get("payload", {})
            raise ProtocolClientError(
                f"{command} failed: {detail.get('error')} ({detail.get('code')})")
        return reply

    def close(self) -> None:
        if self._proc.poll() is None:
            try:
                self._proc.stdin.close()
            except OSError:
                pass
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._proc.kill()

    def __del__(self):
        try:
            self.close()
        except Exception:
            pass


def decode_pixels(payload: dict):
    """PNG-base64 frame -> uint8 RGB array."""
    import numpy as np
    from PIL import Image

    if payload.get("format") != "png_base64":
        raise ProtocolClientError(f"unexpected frame format {payload.get('format')!r}")
    raw = base64.b64decode(payload["data"])
    with Image.open(io.BytesIO(raw)) as img:
        return np.asarray(img.convert("RGB"), dtype=np.uint8)

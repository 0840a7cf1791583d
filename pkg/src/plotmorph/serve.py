"""Loopback HTTP server for exported stores, configs, viewer assets, and the
selection round-trip API.

One server per process, shared by every plot. All responses carry a CORS
wildcard so a viewer served from another origin can read local data.
"""
from __future__ import annotations

import json
import os
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import unquote, urlsplit

from .errors import NotStarted, PortInUse, UnknownMount

CONTENT_TYPES = {
    ".json": "application/json",
    ".bin": "application/octet-stream",
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".png": "image/png",
}

_RANGE_RE = re.compile(r"^bytes=(\d*)-(\d*)$")


def _content_type(path: str) -> str:
    return CONTENT_TYPES.get(Path(path).suffix.lower(), "application/octet-stream")


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "plotmorph"

    # -- helpers -----------------------------------------------------------

    def _headers(self, extra=None):
        self.send_header("Access-Control-Allow-Origin", "*")
        for key, value in (extra or {}).items():
            self.send_header(key, value)

    def _send_empty(self, code: int, extra=None):
        self.send_response(code)
        self._headers(extra)
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _send_body(self, code: int, body: bytes, content_type: str, extra=None):
        self.send_response(code)
        self._headers(extra)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, code: int, payload):
        self._send_body(
            code, json.dumps(payload).encode("utf-8"), "application/json"
        )

    def _not_found(self, what: str = "not found"):
        self._send_body(404, what.encode("utf-8"), "text/plain; charset=utf-8")

    # -- routing -----------------------------------------------------------

    def do_OPTIONS(self):
        self._send_empty(
            204,
            {
                "Access-Control-Allow-Methods": "GET, POST, OPTIONS",
                "Access-Control-Allow-Headers": "Content-Type, Range",
            },
        )

    def do_GET(self):
        registry: _Server = self.server.plotmorph_server
        path = unquote(urlsplit(self.path).path)

        selection_uid = _selection_uid(path)
        if selection_uid is not None:
            try:
                self._send_json(200, registry.get_selection(selection_uid))
            except UnknownMount:
                self._not_found("unknown mount")
            return

        root_rel = registry.resolve(path)
        if root_rel is None:
            self._not_found()
            return
        root, rel = root_rel
        file = _safe_join(root, rel)
        if file is None or not file.is_file():
            self._not_found()
            return
        data = file.read_bytes()
        rng = _parse_range(self.headers.get("Range"), len(data))
        if rng == "unsatisfiable":
            self._send_empty(416, {"Content-Range": f"bytes */{len(data)}"})
            return
        if rng is None:
            self._send_body(200, data, _content_type(rel))
            return
        start, end = rng
        self._send_body(
            206,
            data[start : end + 1],
            _content_type(rel),
            {"Content-Range": f"bytes {start}-{end}/{len(data)}"},
        )

    def do_POST(self):
        registry: _Server = self.server.plotmorph_server
        path = unquote(urlsplit(self.path).path)
        uid = _selection_uid(path)
        if uid is None:
            self._not_found()
            return
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length)
        try:
            payload = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            self._send_body(400, b"body must be JSON", "text/plain; charset=utf-8")
            return
        if not isinstance(payload, list) or not all(
            isinstance(x, str) for x in payload
        ):
            self._send_body(
                400, b"body must be a JSON array of strings", "text/plain; charset=utf-8"
            )
            return
        try:
            registry.set_selection(uid, payload)
        except UnknownMount:
            self._not_found("unknown mount")
            return
        self._send_empty(204)

    def log_message(self, fmt, *args):
        pass


def _selection_uid(path: str) -> Optional[str]:
    prefix = "/api/selections/"
    if path.startswith(prefix):
        uid = path[len(prefix) :].strip("/")
        if uid:
            return uid
    return None


def _safe_join(root: Path, rel: str) -> Optional[Path]:
    candidate = (root / rel).resolve()
    root = root.resolve()
    if candidate == root or root in candidate.parents:
        return candidate
    return None


def _parse_range(header: Optional[str], size: int):
    """None = serve full body; (start, end) inclusive = 206; "unsatisfiable"
    = 416. Multi-range and malformed headers are ignored (full body)."""
    if not header:
        return None
    m = _RANGE_RE.match(header.strip())
    if not m:
        return None
    start_s, end_s = m.groups()
    if start_s == "" and end_s == "":
        return None
    if start_s == "":
        # suffix range: last N bytes
        n = int(end_s)
        if n == 0 or size == 0:
            return "unsatisfiable"
        return max(0, size - n), size - 1
    start = int(start_s)
    if start >= size:
        return "unsatisfiable"
    end = int(end_s) if end_s else size - 1
    return start, min(end, size - 1)


class _Server:
    """Mount registry plus the HTTP listener; one instance per process in
    normal use (module-level singleton below)."""

    def __init__(self):
        self._httpd: Optional[ThreadingHTTPServer] = None
        self._thread: Optional[threading.Thread] = None
        self._mounts: dict[str, Path] = {}
        self._selections: dict[str, list[str]] = {}
        self._viewer_root: Optional[Path] = None
        self._lock = threading.Lock()
        self.base_url: Optional[str] = None

    # -- lifecycle --------------------------------------------------------

    def start(self, port: Optional[int] = None, host: Optional[str] = None) -> str:
        if self._httpd is not None:
            return self.base_url
        host = host or os.environ.get("PLOTMORPH_HOST", "127.0.0.1")
        if port is None:
            env_port = os.environ.get("PLOTMORPH_PORT")
            port = int(env_port) if env_port else 0
        try:
            httpd = ThreadingHTTPServer((host, port), _Handler)
        except OSError as e:
            raise PortInUse(f"cannot bind {host}:{port}: {e}") from None
        httpd.daemon_threads = True
        httpd.plotmorph_server = self
        self._httpd = httpd
        self.base_url = f"http://{host}:{httpd.server_address[1]}"
        self._thread = threading.Thread(
            target=lambda: httpd.serve_forever(poll_interval=0.05),
            name="plotmorph-serve",
            daemon=True,
        )
        self._thread.start()
        return self.base_url

    def stop(self) -> None:
        if self._httpd is not None:
            self._httpd.shutdown()
            self._httpd.server_close()
            self._httpd = None
            self._thread = None
            self.base_url = None

    @property
    def started(self) -> bool:
        return self._httpd is not None

    def bound_address(self):
        if self._httpd is None:
            raise NotStarted("server is not running")
        return self._httpd.server_address

    # -- mounts -----------------------------------------------------------

    def register_dir(self, directory) -> str:
        if self._httpd is None:
            raise NotStarted("call start() before registering directories")
        directory = Path(directory).resolve()
        if not directory.is_dir():
            raise FileNotFoundError(f"{directory} is not a directory")
        with self._lock:
            for uid, root in self._mounts.items():
                if root == directory:
                    return f"{self.base_url}/{uid}/"
            uid = f"m{len(self._mounts)}"
            self._mounts[uid] = directory
            self._selections.setdefault(uid, [])
        return f"{self.base_url}/{uid}/"

    def set_viewer_root(self, directory) -> None:
        self._viewer_root = Path(directory) if directory else None

    def resolve(self, url_path: str):
        """Map a request path to (root directory, relative path)."""
        parts = url_path.lstrip("/").split("/", 1)
        if len(parts) != 2 or not parts[1]:
            return None
        head, rel = parts
        if head == "viewer":
            viewer_root = self._viewer_root or _default_viewer_root()
            if viewer_root is None:
                return None
            return viewer_root, rel
        with self._lock:
            root = self._mounts.get(head)
        if root is None:
            return None
        return root, rel

    # -- selections ---------------------------------------------------------

    def set_selection(self, uid: str, obs_ids: list[str]) -> None:
        with self._lock:
            if uid not in self._mounts:
                raise UnknownMount(uid)
            self._selections[uid] = list(obs_ids)

    def get_selection(self, uid: str) -> list[str]:
        with self._lock:
            if uid not in self._mounts:
                raise UnknownMount(uid)
            return list(self._selections.get(uid, []))


def _default_viewer_root() -> Optional[Path]:
    env = os.environ.get("PLOTMORPH_VIEWER_DIR")
    if env and Path(env).is_dir():
        return Path(env)
    packaged = Path(__file__).parent / "_viewer_assets"
    if packaged.is_dir():
        return packaged
    return None


_default_server = _Server()


def start(port: Optional[int] = None, host: Optional[str] = None) -> str:
    """Start (or return) the process-wide server; binds loopback by default."""
    return _default_server.start(port=port, host=host)


def stop() -> None:
    _default_server.stop()


def is_started() -> bool:
    return _default_server.started


def base_url() -> str:
    if not _default_server.started:
        raise NotStarted("server is not running")
    return _default_server.base_url


def register_dir(directory) -> str:
    return _default_server.register_dir(directory)


def get_selection(mount_uid: str) -> list[str]:
    return _default_server.get_selection(mount_uid)


def set_viewer_root(directory) -> None:
    _default_server.set_viewer_root(directory)

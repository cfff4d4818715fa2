"""Read-only HTTP/JSON API over one loaded graph.

The graph is materialized before the first request and never modified, so
handler threads share it without locking.  Response bodies come from the
same functions and serializer as ``fx --json``.
"""

from __future__ import annotations

import errno
import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, unquote, urlsplit

from . import api
from .errors import FxError, LookupFailed, ParseError, PortInUse
from .schema import Schema
from .store import Graph

log = logging.getLogger(__name__)

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


class HttpError(Exception):
    def __init__(self, status: int, error: str, detail: str, **extra):
        super().__init__(detail)
        self.status = status
        self.body = {"error": error, "detail": detail, **extra}


def _flag(params, name, default):
    values = params.get(name)
    if not values:
        return default
    v = values[-1].strip().lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise HttpError(400, "bad-request", f"{name} must be true or false, got {values[-1]!r}")


def _lookup_error(exc: LookupFailed) -> HttpError:
    extra = {"candidates": exc.candidates} if exc.candidates else {}
    return HttpError(400 if exc.ambiguous else 404, exc.code, str(exc), **extra)


class _Handler(BaseHTTPRequestHandler):
    server_version = "fx"
    protocol_version = "HTTP/1.1"
    dataset: api.Dataset  # set on the subclass built by serve()

    def log_message(self, fmt, *args):
        log.info("%s " + fmt, self.address_string(), *args)

    def _send(self, status: int, payload):
        body = api.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _dispatch(self, method: str):
        try:
            url = urlsplit(self.path)
            params = parse_qs(url.query, keep_blank_values=True)
            parts = [unquote(p) for p in url.path.split("/") if p]
            self._send(200, self._route(method, parts, params))
        except HttpError as exc:
            self._send(exc.status, exc.body)
        except LookupFailed as exc:
            err = _lookup_error(exc)
            self._send(err.status, err.body)
        except FxError as exc:
            self._send(400, {"error": exc.code, "detail": str(exc)})
        except Exception as exc:  # pragma: no cover - last-resort guard
            log.exception("request failed")
            self._send(500, {"error": "internal-error", "detail": str(exc)})

    def _route(self, method, parts, params):
        ds = self.dataset
        if method == "POST":
            if parts == ["query"]:
                return self._query()
            if self._known_get(parts):
                raise HttpError(405, "method-not-allowed", f"use GET for /{'/'.join(parts)}")
            raise HttpError(404, "not-found", f"no endpoint /{'/'.join(parts)}")
        if parts == ["health"]:
            return api.health(ds)
        if parts == ["experts"]:
            subject = (params.get("subject") or [""])[-1]
            if not subject.strip():
                raise HttpError(400, "bad-request", "missing subject parameter")
            return api.experts(ds, subject, _flag(params, "inference", True))
        if len(parts) == 2 and parts[0] == "faculty":
            return api.profile(ds, parts[1])
        if len(parts) == 2 and parts[0] == "collaborators":
            return api.collaborators(ds, parts[1], _flag(params, "suggested", False))
        if parts == ["query"]:
            raise HttpError(405, "method-not-allowed", "use POST for /query")
        raise HttpError(404, "not-found", f"no endpoint /{'/'.join(parts)}")

    @staticmethod
    def _known_get(parts):
        return parts in (["health"], ["experts"]) or (
            len(parts) == 2 and parts[0] in ("faculty", "collaborators"))

    def _query(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length > 0 else b""
        if not raw.strip():
            raise HttpError(400, "bad-request", "empty request body")
        try:
            body = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise HttpError(400, "bad-request", f"body is not JSON: {exc}") from None
        if not isinstance(body, dict) or not isinstance(body.get("query"), str):
            raise HttpError(400, "bad-request", 'body must be {"query": text, "inference": bool}')
        inference = body.get("inference", True)
        if not isinstance(inference, bool):
            raise HttpError(400, "bad-request", "inference must be a boolean")
        try:
            return api.query_payload(self.dataset, body["query"], inference)
        except ParseError as exc:
            raise HttpError(400, exc.code, str(exc), line=exc.line, column=exc.column) from None

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")


class ServerHandle:
    """A running server; ``port`` is the bound port (useful with port 0)."""

    def __init__(self, httpd: ThreadingHTTPServer, thread: threading.Thread):
        self._httpd = httpd
        self._thread = thread
        self.host, self.port = httpd.server_address[:2]

    @property
    def url(self) -> str:
        return f"http://{self.host}:{self.port}"

    def wait(self, timeout: Optional[float] = None):
        self._thread.join(timeout)

    def shutdown(self):
        self._httpd.shutdown()
        self._httpd.server_close()
        self._thread.join()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.shutdown()


def serve(g: Graph, schema: Schema, port: int, host: str = "127.0.0.1") -> ServerHandle:
    """Materialize ``g`` and start serving in a background thread."""
    ds = api.Dataset(g.copy(), schema)
    ds.materialized.full  # build everything before handlers run
    handler = type("Handler", (_Handler,), {"dataset": ds})
    try:
        httpd = ThreadingHTTPServer((host, port), handler)
    except OSError as exc:
        if exc.errno == errno.EADDRINUSE:
            raise PortInUse(f"port {port} is already in use") from None
        raise
    httpd.daemon_threads = True
    thread = threading.Thread(target=httpd.serve_forever, name="fx-http", daemon=True)
    thread.start()
    return ServerHandle(httpd, thread)

"""Read-only HTTP facade over the navigator and the snapshot store.

Endpoints serve the same canonical JSON bytes the CLI prints, so scripts
and the companion UI can rely on byte-exact parity. Rebuilds happen via
the CLI or the scheduler only; requests are served against an immutable
snapshot that can be hot-swapped atomically.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from tiergraph.config import ProjectConfig
from tiergraph.jsonio import canonical_bytes
from tiergraph.navigate import (
    DEFAULT_MAX_DEPTH,
    EntryNotFoundError,
    call_graph_to_dict,
    generate_call_graph,
    resolve_entry,
    search,
    search_result_to_dict,
)
from tiergraph.store import GraphSnapshot, MetricsSeries, SnapshotStore, read_metrics_csv


@dataclass(frozen=True)
class ApiError(Exception):
    status: int
    code: str
    message: str

    def body(self) -> bytes:
        return canonical_bytes(
            {"status": self.status, "code": self.code, "message": self.message}
        )


class AppState:
    """Immutable-per-request view of configs, snapshot, and metrics."""

    def __init__(self, configs: list[ProjectConfig], store: SnapshotStore):
        self.configs = configs
        self.store = store
        self._lock = threading.Lock()
        self._snapshot: GraphSnapshot | None = None

    @property
    def snapshot(self) -> GraphSnapshot | None:
        return self._snapshot

    def swap_snapshot(self, snapshot: GraphSnapshot) -> None:
        with self._lock:
            self._snapshot = snapshot

    def load_latest(self) -> None:
        latest = self.store.load_latest()
        if latest is not None:
            self.swap_snapshot(latest)

    def require_snapshot(self) -> GraphSnapshot:
        snapshot = self._snapshot
        if snapshot is None:
            raise ApiError(503, "no_snapshot", "no snapshot loaded; run a sweep first")
        return snapshot

    def metrics(self) -> MetricsSeries:
        return read_metrics_csv(self.store.metrics_path)


def handle_search(state: AppState, query: dict[str, list[str]]) -> bytes:
    keyword = (query.get("q") or [""])[0]
    if not keyword:
        raise ApiError(400, "empty_query", "query parameter q must be non-empty")
    ci = (query.get("ci") or ["0"])[0] in ("1", "true")
    snapshot = state.require_snapshot()
    result = search(keyword, snapshot, snapshot.files, state.configs, case_insensitive=ci)
    return canonical_bytes(search_result_to_dict(result))


def handle_graph(state: AppState, query: dict[str, list[str]]) -> bytes:
    entry = (query.get("entry") or [""])[0]
    if not entry:
        raise ApiError(400, "missing_entry", "query parameter entry is required")
    raw_depth = (query.get("max_depth") or [str(DEFAULT_MAX_DEPTH)])[0]
    try:
        max_depth = int(raw_depth)
        if max_depth <= 0:
            raise ValueError
    except ValueError:
        raise ApiError(400, "bad_depth", f"max_depth must be a positive integer: {raw_depth!r}")
    snapshot = state.require_snapshot()
    try:
        entry_id = resolve_entry(snapshot, entry)
        graph = generate_call_graph(entry_id, snapshot, max_depth=max_depth)
    except EntryNotFoundError as exc:
        raise ApiError(404, "unknown_entry", str(exc))
    return canonical_bytes(call_graph_to_dict(graph))


def handle_metrics(state: AppState) -> bytes:
    state.require_snapshot()
    series = state.metrics()
    return canonical_bytes(
        {
            "entries": [
                {
                    "date": e.date,
                    "project": e.project_id,
                    "graph_size": e.graph_size,
                    "function_count": e.function_count,
                }
                for e in series.entries
            ]
        }
    )


def handle_snapshot_summary(state: AppState) -> bytes:
    snapshot = state.require_snapshot()
    return canonical_bytes(
        {
            "snapshot_id": snapshot.snapshot_id,
            "created_at": snapshot.created_at,
            "corpus_digest": snapshot.corpus_digest,
            "file_count": len(snapshot.files),
            "node_count": len(snapshot.nodes),
            "edge_count": len(snapshot.edges),
            "per_project_counts": snapshot.per_project_counts,
            "diagnostics_summary": snapshot.diagnostics_summary,
        }
    )


_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "application/javascript",
    ".mjs": "application/javascript",
    ".css": "text/css",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
}


def make_handler(state: AppState, ui_dir: Path | None = None, dev: bool = False):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):  # quiet by default
            pass

        def _send(self, status: int, body: bytes, content_type: str = "application/json") -> None:
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            if dev:
                self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            parsed = urlparse(self.path)
            query = parse_qs(parsed.query)
            try:
                if parsed.path == "/api/search":
                    self._send(200, handle_search(state, query))
                elif parsed.path == "/api/graph":
                    self._send(200, handle_graph(state, query))
                elif parsed.path == "/api/metrics/daily":
                    self._send(200, handle_metrics(state))
                elif parsed.path == "/api/snapshot":
                    self._send(200, handle_snapshot_summary(state))
                elif parsed.path.startswith("/api/"):
                    raise ApiError(404, "not_found", f"no endpoint {parsed.path}")
                else:
                    self._serve_static(parsed.path)
            except ApiError as err:
                self._send(err.status, err.body())

        def do_POST(self):
            self._send(405, ApiError(405, "read_only", "API is read-only").body())

        def _serve_static(self, path: str) -> None:
            if ui_dir is None:
                raise ApiError(404, "not_found", "no UI bundle configured")
            rel = path.lstrip("/") or "index.html"
            target = (ui_dir / rel).resolve()
            if not str(target).startswith(str(ui_dir.resolve())) or not target.is_file():
                raise ApiError(404, "not_found", f"no such file {path}")
            ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
            self._send(200, target.read_bytes(), ctype)

    return Handler


def make_server(
    state: AppState,
    host: str = "127.0.0.1",
    port: int = 0,
    ui_dir: Path | None = None,
    dev: bool = False,
) -> ThreadingHTTPServer:
    handler = make_handler(state, ui_dir=ui_dir, dev=dev)
    return ThreadingHTTPServer((host, port), handler)

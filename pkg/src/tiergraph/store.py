"""Snapshot assembly, persistence, daily metrics, and the scheduled sweep.

A snapshot is one persisted result of a full corpus sweep: all nodes
(classes, methods, properties, externals), every resolved edge, per-project
counts, and a diagnostics summary. The store writes a single checksummed
line-delimited file per snapshot so history stays inspectable and
diff-friendly.
"""

from __future__ import annotations

import csv
import hashlib
import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from tiergraph.config import LayerKind, LayerMap, ProjectConfig
from tiergraph.corpus import FileCategory, FileRecord, corpus_hash, scan_corpus
from tiergraph.diagnostics import TICK_OVERLAP, DiagnosticLog, logger
from tiergraph.extract import FileModel, extract_file
from tiergraph.resolve import (
    EdgeKind,
    ExternalRef,
    ResolvedEdge,
    build_symbol_index,
    resolve_all,
)

FORMAT_NAME = "tiergraph-snapshot"
FORMAT_VERSION = 1
METRICS_HEADER = ["date", "project", "graph_size", "function_count"]


class SnapshotNotFoundError(Exception):
    pass


class SnapshotIntegrityError(Exception):
    pass


@dataclass(frozen=True)
class GraphNode:
    node_id: str
    name: str
    node_kind: str  # "class" | "method" | "property" | "external"
    layer: LayerKind
    project: str = ""
    file: str = ""


@dataclass(frozen=True)
class MetricsEntry:
    date: str  # YYYY-MM-DD
    project_id: str
    graph_size: int
    function_count: int


@dataclass
class MetricsSeries:
    entries: list[MetricsEntry] = field(default_factory=list)


@dataclass
class GraphSnapshot:
    snapshot_id: str
    created_at: str
    corpus_digest: str
    files: list[FileRecord]
    nodes: list[GraphNode]
    edges: list[ResolvedEdge]
    per_project_counts: dict[str, dict[str, int]]
    diagnostics_summary: dict[str, int]

    def node_ids(self) -> set[str]:
        return {n.node_id for n in self.nodes}

    def content_equal(self, other: "GraphSnapshot") -> bool:
        """Equality of everything except identity (id and timestamp)."""
        return (
            self.corpus_digest == other.corpus_digest
            and self.files == other.files
            and self.nodes == other.nodes
            and self.edges == other.edges
            and self.per_project_counts == other.per_project_counts
            and self.diagnostics_summary == other.diagnostics_summary
        )


def assemble_snapshot(
    inventory: list[FileRecord],
    file_models: list[FileModel],
    edges: list[ResolvedEdge],
    layer_map: LayerMap,
    diagnostics: DiagnosticLog,
    now: datetime | None = None,
) -> GraphSnapshot:
    created = now or datetime.now(timezone.utc)
    digest = corpus_hash(inventory)
    nodes: dict[str, GraphNode] = {}
    for fm in sorted(file_models, key=lambda m: (m.project_id, m.path)):
        for cls in fm.classes:
            layer = layer_map.layer_of(cls.namespace)
            nodes[cls.fq_name] = GraphNode(
                node_id=cls.fq_name, name=cls.fq_name, node_kind="class",
                layer=layer, project=fm.project_id, file=fm.path,
            )
            for method in cls.methods:
                nodes[method.member_id] = GraphNode(
                    node_id=method.member_id,
                    name=f"{cls.fq_name}.{method.name}",
                    node_kind="method", layer=layer,
                    project=fm.project_id, file=fm.path,
                )
            for prop in cls.properties:
                nodes[prop.member_id] = GraphNode(
                    node_id=prop.member_id,
                    name=f"{cls.fq_name}.{prop.name}",
                    node_kind="property", layer=layer,
                    project=fm.project_id, file=fm.path,
                )
    for edge in edges:
        if edge.to_external is not None and edge.to_id not in nodes:
            nodes[edge.to_id] = GraphNode(
                node_id=edge.to_id, name=edge.to_external.name,
                node_kind="external", layer=edge.to_layer,
            )

    node_list = sorted(nodes.values(), key=lambda n: n.node_id)
    counts: dict[str, dict[str, int]] = {}
    projects = sorted({f.project_id for f in inventory})
    project_of_node = {n.node_id: n.project for n in node_list}
    for project in projects:
        counts[project] = {
            "class_count": sum(
                1 for n in node_list if n.project == project and n.node_kind == "class"
            ),
            "function_count": sum(
                1 for n in node_list if n.project == project and n.node_kind == "method"
            ),
            "property_count": sum(
                1 for n in node_list if n.project == project and n.node_kind == "property"
            ),
            "edge_count": sum(
                1 for e in edges if project_of_node.get(e.from_id) == project
            ),
        }

    snapshot_id = (
        created.strftime("%Y%m%dT%H%M%S.%f") + "Z-" + digest[:12]
    )
    return GraphSnapshot(
        snapshot_id=snapshot_id,
        created_at=created.isoformat(),
        corpus_digest=digest,
        files=list(inventory),
        nodes=node_list,
        edges=list(edges),
        per_project_counts=counts,
        diagnostics_summary=diagnostics.counts_by_code(),
    )


def rebuild(
    configs: list[ProjectConfig],
    store: "SnapshotStore | None" = None,
    diagnostics: DiagnosticLog | None = None,
    model_cache: dict | None = None,
    now: datetime | None = None,
) -> GraphSnapshot:
    """Full pipeline: sweep, extract, index, resolve, assemble.

    A missing project root aborts; a file that fails extraction never does.
    When a model cache is supplied, files whose content hash is unchanged
    reuse the previous sweep's model (output must equal a cold rebuild;
    tests hold that equality).
    """
    log = diagnostics if diagnostics is not None else DiagnosticLog()
    layer_map = LayerMap(configs)
    inventory = scan_corpus(configs)
    roots = {cfg.project_id: Path(cfg.root_path) for cfg in configs}

    file_models: list[FileModel] = []
    for record in inventory:
        if record.category is not FileCategory.CodeBehind or record.skipped:
            continue
        cache_key = (record.project_id, record.path, record.content_hash)
        if model_cache is not None and cache_key in model_cache:
            model, cached_records = model_cache[cache_key]
            log.absorb(cached_records)  # skipping must not change output
            file_models.append(model)
            continue
        path = roots[record.project_id] / record.path
        file_log = DiagnosticLog()
        try:
            source = path.read_text(encoding="utf-8", errors="replace")
            model = extract_file(source, record.path, record.project_id, file_log)
        except Exception as exc:  # defensive: a bad file must not kill the sweep
            log.emit("extract-failed", record.path, 0, f"extraction failed: {exc}")
            continue
        log.absorb(file_log.records)
        file_models.append(model)
        if model_cache is not None:
            model_cache[cache_key] = (model, tuple(file_log.records))

    index = build_symbol_index(file_models, log)
    edges = resolve_all(file_models, index, layer_map, log)
    snapshot = assemble_snapshot(inventory, file_models, edges, layer_map, log, now)
    if store is not None:
        store.persist(snapshot)
    return snapshot


# ---------------------------------------------------------------------------
# Persistence

def _edge_to_dict(edge: ResolvedEdge) -> dict:
    d = {
        "from": edge.from_id,
        "to": edge.to_id,
        "kind": edge.kind.value,
        "from_layer": edge.from_layer.value,
        "to_layer": edge.to_layer.value,
        "crosses_project": edge.crosses_project,
        "file": edge.file,
        "char_offset": edge.char_offset,
        "receiver": edge.receiver,
        "member": edge.member,
    }
    if edge.to_external is not None:
        d["external"] = {
            "kind": edge.to_external.kind,
            "name": edge.to_external.name,
            "namespace": edge.to_external.namespace,
            "uid": edge.to_external.uid,
        }
    return d


def _edge_from_dict(d: dict) -> ResolvedEdge:
    external = None
    if "external" in d:
        e = d["external"]
        external = ExternalRef(
            kind=e["kind"], name=e["name"], namespace=e["namespace"], uid=e["uid"]
        )
    return ResolvedEdge(
        from_id=d["from"],
        to_id=d["to"],
        to_external=external,
        kind=EdgeKind(d["kind"]),
        from_layer=LayerKind(d["from_layer"]),
        to_layer=LayerKind(d["to_layer"]),
        crosses_project=d["crosses_project"],
        file=d["file"],
        char_offset=d["char_offset"],
        receiver=d["receiver"],
        member=d["member"],
    )


class SnapshotStore:
    """One snapshot per checksummed file under <data_dir>/snapshots."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.snapshot_dir = self.data_dir / "snapshots"
        self.metrics_path = self.data_dir / "metrics.csv"

    def _path_for(self, snapshot_id: str) -> Path:
        return self.snapshot_dir / f"{snapshot_id}.tgsnap"

    def persist(self, snapshot: GraphSnapshot) -> Path:
        verify_integrity(snapshot)
        self.snapshot_dir.mkdir(parents=True, exist_ok=True)
        body_lines: list[str] = []
        for f in snapshot.files:
            body_lines.append(json.dumps(
                {"t": "file", "path": f.path, "project": f.project_id,
                 "category": f.category.value, "hash": f.content_hash,
                 "skipped": f.skipped},
                sort_keys=True,
            ))
        for n in snapshot.nodes:
            body_lines.append(json.dumps(
                {"t": "node", "id": n.node_id, "name": n.name,
                 "kind": n.node_kind, "layer": n.layer.value,
                 "project": n.project, "file": n.file},
                sort_keys=True,
            ))
        for e in snapshot.edges:
            body_lines.append(json.dumps({"t": "edge", **_edge_to_dict(e)}, sort_keys=True))
        body_lines.append(json.dumps(
            {"t": "counts", "per_project": snapshot.per_project_counts}, sort_keys=True
        ))
        body_lines.append(json.dumps(
            {"t": "diagnostics", "counts": snapshot.diagnostics_summary}, sort_keys=True
        ))
        body = "".join(line + "\n" for line in body_lines)
        header = json.dumps(
            {
                "format": FORMAT_NAME,
                "version": FORMAT_VERSION,
                "snapshot_id": snapshot.snapshot_id,
                "created_at": snapshot.created_at,
                "corpus_digest": snapshot.corpus_digest,
                "body_sha256": hashlib.sha256(body.encode()).hexdigest(),
                "line_count": len(body_lines),
            },
            sort_keys=True,
        )
        path = self._path_for(snapshot.snapshot_id)
        path.write_text(header + "\n" + body, encoding="utf-8")
        return path

    def load(self, snapshot_id: str) -> GraphSnapshot:
        path = self._path_for(snapshot_id)
        if not path.is_file():
            raise SnapshotNotFoundError(f"no snapshot {snapshot_id!r}")
        return self._load_path(path)

    def _load_path(self, path: Path) -> GraphSnapshot:
        text = path.read_text(encoding="utf-8")
        newline = text.find("\n")
        if newline < 0:
            raise SnapshotIntegrityError(f"{path.name}: missing body")
        try:
            header = json.loads(text[:newline])
        except json.JSONDecodeError as exc:
            raise SnapshotIntegrityError(f"{path.name}: bad header: {exc}") from exc
        if header.get("format") != FORMAT_NAME:
            raise SnapshotIntegrityError(f"{path.name}: not a snapshot file")
        if header.get("version") != FORMAT_VERSION:
            raise SnapshotIntegrityError(
                f"{path.name}: unsupported version {header.get('version')}"
            )
        body = text[newline + 1 :]
        digest = hashlib.sha256(body.encode()).hexdigest()
        if digest != header["body_sha256"]:
            raise SnapshotIntegrityError(f"{path.name}: checksum mismatch")
        lines = body.splitlines()
        if len(lines) != header["line_count"]:
            raise SnapshotIntegrityError(f"{path.name}: truncated body")

        files: list[FileRecord] = []
        nodes: list[GraphNode] = []
        edges: list[ResolvedEdge] = []
        counts: dict[str, dict[str, int]] = {}
        diag: dict[str, int] = {}
        for line in lines:
            record = json.loads(line)
            t = record["t"]
            if t == "file":
                files.append(FileRecord(
                    path=record["path"], project_id=record["project"],
                    category=FileCategory(record["category"]),
                    content_hash=record["hash"], skipped=record["skipped"],
                ))
            elif t == "node":
                nodes.append(GraphNode(
                    node_id=record["id"], name=record["name"],
                    node_kind=record["kind"], layer=LayerKind(record["layer"]),
                    project=record["project"], file=record["file"],
                ))
            elif t == "edge":
                edges.append(_edge_from_dict(record))
            elif t == "counts":
                counts = record["per_project"]
            elif t == "diagnostics":
                diag = record["counts"]
        snapshot = GraphSnapshot(
            snapshot_id=header["snapshot_id"],
            created_at=header["created_at"],
            corpus_digest=header["corpus_digest"],
            files=files,
            nodes=nodes,
            edges=edges,
            per_project_counts=counts,
            diagnostics_summary=diag,
        )
        verify_integrity(snapshot)
        return snapshot

    def list_snapshots(self) -> list[tuple[str, str]]:
        """(snapshot_id, created_at) pairs, oldest first."""
        out = []
        if self.snapshot_dir.is_dir():
            for path in sorted(self.snapshot_dir.glob("*.tgsnap")):
                header = json.loads(path.read_text(encoding="utf-8").split("\n", 1)[0])
                out.append((header["snapshot_id"], header["created_at"]))
        out.sort(key=lambda pair: pair[1])
        return out

    def load_latest(self) -> GraphSnapshot | None:
        listed = self.list_snapshots()
        if not listed:
            return None
        return self.load(listed[-1][0])

    def prune(self, keep: int) -> list[str]:
        """Drop the oldest snapshots, keeping the N most recent."""
        listed = self.list_snapshots()
        removed = []
        for snapshot_id, _ in listed[: max(0, len(listed) - keep)]:
            self._path_for(snapshot_id).unlink()
            removed.append(snapshot_id)
        return removed


def verify_integrity(snapshot: GraphSnapshot) -> None:
    """Every edge endpoint must be a known node id."""
    ids = snapshot.node_ids()
    for edge in snapshot.edges:
        if edge.from_id not in ids:
            raise SnapshotIntegrityError(f"edge source missing from nodes: {edge.from_id}")
        if edge.to_id not in ids:
            raise SnapshotIntegrityError(f"edge target missing from nodes: {edge.to_id}")


# ---------------------------------------------------------------------------
# Metrics

def snapshot_date(snapshot: GraphSnapshot) -> str:
    return snapshot.created_at[:10]


def append_metrics(
    snapshot: GraphSnapshot, series: MetricsSeries, on_date: str | None = None
) -> MetricsSeries:
    """Append one entry per project; re-running for a date replaces it."""
    date = on_date or snapshot_date(snapshot)
    fresh = [e for e in series.entries if e.date != date]
    for project, counts in sorted(snapshot.per_project_counts.items()):
        node_count = sum(
            1 for n in snapshot.nodes if n.project == project
        )
        fresh.append(MetricsEntry(
            date=date,
            project_id=project,
            graph_size=node_count + counts["edge_count"],
            function_count=counts["function_count"],
        ))
    fresh.sort(key=lambda e: (e.date, e.project_id))
    return MetricsSeries(entries=fresh)


def write_metrics_csv(series: MetricsSeries, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(METRICS_HEADER)
        for e in series.entries:
            writer.writerow([e.date, e.project_id, e.graph_size, e.function_count])


def read_metrics_csv(path: str | Path) -> MetricsSeries:
    path = Path(path)
    if not path.is_file():
        return MetricsSeries()
    entries = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            entries.append(MetricsEntry(
                date=row["date"], project_id=row["project"],
                graph_size=int(row["graph_size"]),
                function_count=int(row["function_count"]),
            ))
    return MetricsSeries(entries=entries)


# ---------------------------------------------------------------------------
# Scheduler

def run_scheduled(
    configs: list[ProjectConfig],
    interval_seconds: float,
    store: SnapshotStore,
    once: bool = False,
    max_ticks: int | None = None,
    sleep_fn=time.sleep,
    monotonic_fn=time.monotonic,
    on_tick=None,
) -> int:
    """Rebuild + metrics on a fixed interval.

    One-shot mode exists for external cron-style scheduling. A tick whose
    rebuild overruns the interval skips the missed ticks with a log record.
    A failed rebuild is logged and the job waits for the next tick; it
    never dies on a single failure.
    """
    if not once and interval_seconds <= 0:
        raise ValueError("interval must be positive")
    cache: dict = {}
    ticks = 0
    next_deadline = monotonic_fn()
    while True:
        try:
            snapshot = rebuild(configs, store=store, model_cache=cache)
            series = read_metrics_csv(store.metrics_path)
            series = append_metrics(snapshot, series)
            write_metrics_csv(series, store.metrics_path)
            if on_tick is not None:
                on_tick(ticks, snapshot)
        except Exception as exc:
            logger.error("scheduled rebuild failed: %s", exc)
        ticks += 1
        if once or (max_ticks is not None and ticks >= max_ticks):
            return ticks
        next_deadline += interval_seconds
        now = monotonic_fn()
        if now > next_deadline:
            missed = int((now - next_deadline) // interval_seconds) + 1
            logger.warning("%s: rebuild overran; skipping %d tick(s)", TICK_OVERLAP, missed)
            next_deadline += missed * interval_seconds
        sleep_fn(max(0.0, next_deadline - monotonic_fn()))

"""Accuracy and timing evaluation against hand-traced ground truth.

Each truth file records one entry function and the member names a human
discovered below it. Automated graphs are scored by node-name matching:
recall = matched/manual, precision = matched/auto, and the aggregate is
sum(matched)/sum(manual) over the suite. Manual discovery minutes are an
input recorded beside the trace; automated minutes are measured.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from tiergraph.diagnostics import ENTRY_UNRESOLVED, DiagnosticLog
from tiergraph.navigate import (
    CallGraph,
    EntryNotFoundError,
    generate_call_graph,
    resolve_entry,
)
from tiergraph.store import GraphSnapshot

REPORT_HEADER = [
    "entry", "manual_count", "auto_count", "matched_count",
    "recall", "precision", "manual_minutes", "auto_minutes", "missed",
]


@dataclass(frozen=True)
class GroundTruthGraph:
    entry: str
    expected_nodes: frozenset[str]
    manual_minutes: float | None = None
    expected_misses: tuple[tuple[str, str], ...] = ()  # (node, diagnostic code)
    source_path: str = ""

    def __post_init__(self):
        if self.entry not in self.expected_nodes:
            raise ValueError(f"entry {self.entry!r} missing from expected nodes")


def load_truth_file(path: str | Path) -> GroundTruthGraph:
    """Plain-text schema: an ``entry:`` line, optional ``manual_minutes:``
    and ``expect_miss:`` lines, then one expected node name per line.
    """
    path = Path(path)
    entry = None
    minutes = None
    misses: list[tuple[str, str]] = []
    nodes: set[str] = set()
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("entry:"):
            entry = line.split(":", 1)[1].strip()
        elif line.startswith("manual_minutes:"):
            minutes = float(line.split(":", 1)[1].strip())
        elif line.startswith("expect_miss:"):
            parts = line.split(":", 1)[1].split()
            if len(parts) != 2:
                raise ValueError(f"{path}: bad expect_miss line {line!r}")
            misses.append((parts[0], parts[1]))
        else:
            nodes.add(line)
    if entry is None:
        raise ValueError(f"{path}: missing entry line")
    return GroundTruthGraph(
        entry=entry,
        expected_nodes=frozenset(nodes),
        manual_minutes=minutes,
        expected_misses=tuple(misses),
        source_path=str(path),
    )


def load_truth_suite(directory: str | Path) -> list[GroundTruthGraph]:
    files = sorted(Path(directory).rglob("*.truth"))
    if not files:
        raise ValueError(f"no .truth files under {directory}")
    return [load_truth_file(f) for f in files]


@dataclass(frozen=True)
class EntryResult:
    entry: str
    auto_count: int
    manual_count: int
    matched_count: int
    recall: float
    precision: float
    manual_minutes: float | None = None
    auto_minutes: float | None = None
    missed_nodes: tuple[str, ...] = ()


@dataclass
class AccuracyReport:
    per_entry: list[EntryResult] = field(default_factory=list)
    aggregate_accuracy: float = 0.0
    manual_avg_minutes: float | None = None
    auto_avg_minutes: float | None = None

    @property
    def speedup_flag(self) -> bool:
        """True when automated discovery beat the recorded manual baseline."""
        return (
            self.manual_avg_minutes is not None
            and self.auto_avg_minutes is not None
            and self.auto_avg_minutes < self.manual_avg_minutes
        )

    @property
    def speedup_ratio(self) -> float | None:
        if not self.speedup_flag:
            return None
        if not self.auto_avg_minutes:  # below the 2-decimal reporting resolution
            return float("inf")
        return self.manual_avg_minutes / self.auto_avg_minutes


def graph_node_names(graph: CallGraph) -> frozenset[str]:
    return frozenset(n.name for n in graph.nodes)


def compare(auto: CallGraph, truth: GroundTruthGraph) -> EntryResult:
    """Score one generated graph against its hand-traced counterpart."""
    root_names = {n.name for n in auto.nodes if n.node_id == auto.root}
    if truth.entry not in root_names:
        raise ValueError(
            f"graph root {sorted(root_names)} does not match truth entry {truth.entry!r}"
        )
    auto_names = graph_node_names(auto)
    matched = auto_names & truth.expected_nodes
    manual_count = len(truth.expected_nodes)
    auto_count = len(auto_names)
    return EntryResult(
        entry=truth.entry,
        auto_count=auto_count,
        manual_count=manual_count,
        matched_count=len(matched),
        recall=len(matched) / manual_count if manual_count else 0.0,
        precision=len(matched) / auto_count if auto_count else 0.0,
        manual_minutes=truth.manual_minutes,
        missed_nodes=tuple(sorted(truth.expected_nodes - auto_names)),
    )


def aggregate_results(results: list[EntryResult]) -> AccuracyReport:
    total_manual = sum(r.manual_count for r in results)
    total_matched = sum(r.matched_count for r in results)
    manual_minutes = [r.manual_minutes for r in results if r.manual_minutes is not None]
    auto_minutes = [r.auto_minutes for r in results if r.auto_minutes is not None]
    return AccuracyReport(
        per_entry=list(results),
        aggregate_accuracy=total_matched / total_manual if total_manual else 0.0,
        manual_avg_minutes=(
            round(sum(manual_minutes) / len(manual_minutes), 2) if manual_minutes else None
        ),
        auto_avg_minutes=(
            round(sum(auto_minutes) / len(auto_minutes), 2) if auto_minutes else None
        ),
    )


def run_benchmark(
    snapshot: GraphSnapshot,
    truth_suite: list[GroundTruthGraph],
    timer=time.perf_counter,
    max_depth: int = 64,
    log: DiagnosticLog | None = None,
) -> AccuracyReport:
    """Generate and score every suite entry, timing automated discovery."""
    results: list[EntryResult] = []
    for truth in truth_suite:
        try:
            entry_id = resolve_entry(snapshot, truth.entry)
        except EntryNotFoundError as exc:
            if log is not None:
                log.emit(ENTRY_UNRESOLVED, truth.source_path, 0, str(exc))
            results.append(EntryResult(
                entry=truth.entry, auto_count=0,
                manual_count=len(truth.expected_nodes), matched_count=0,
                recall=0.0, precision=0.0, manual_minutes=truth.manual_minutes,
                auto_minutes=0.0,
                missed_nodes=tuple(sorted(truth.expected_nodes)),
            ))
            continue
        start = timer()
        graph = generate_call_graph(entry_id, snapshot, max_depth=max_depth)
        elapsed_minutes = round((timer() - start) / 60.0, 2)
        result = compare(graph, truth)
        results.append(replace(result, auto_minutes=elapsed_minutes))
    return aggregate_results(results)


def write_report_csv(report: AccuracyReport, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_HEADER)
        for r in report.per_entry:
            writer.writerow([
                r.entry, r.manual_count, r.auto_count, r.matched_count,
                repr(r.recall), repr(r.precision),
                "" if r.manual_minutes is None else repr(r.manual_minutes),
                "" if r.auto_minutes is None else repr(r.auto_minutes),
                "|".join(r.missed_nodes),
            ])


def read_report_csv(path: str | Path) -> AccuracyReport:
    """Re-parse a report CSV; derived numbers are recomputed from counts."""
    results: list[EntryResult] = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            manual_count = int(row["manual_count"])
            auto_count = int(row["auto_count"])
            matched = int(row["matched_count"])
            results.append(EntryResult(
                entry=row["entry"],
                auto_count=auto_count,
                manual_count=manual_count,
                matched_count=matched,
                recall=matched / manual_count if manual_count else 0.0,
                precision=matched / auto_count if auto_count else 0.0,
                manual_minutes=float(row["manual_minutes"]) if row["manual_minutes"] else None,
                auto_minutes=float(row["auto_minutes"]) if row["auto_minutes"] else None,
                missed_nodes=tuple(row["missed"].split("|")) if row["missed"] else (),
            ))
    return aggregate_results(results)

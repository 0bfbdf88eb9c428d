"""tiergraph command line.

Sweep and schedule rebuilds, inspect snapshots, search the corpus,
generate call graphs, run the accuracy benchmark, and serve the HTTP API.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from tiergraph.config import ConfigError, load_config, resolve_config_path
from tiergraph.diagnostics import DiagnosticLog
from tiergraph.extract import extract_file
from tiergraph.jsonio import canonical_bytes
from tiergraph.navigate import (
    EntryNotFoundError,
    export_graph,
    generate_call_graph,
    resolve_entry,
    search,
    search_result_to_dict,
)
from tiergraph.service import AppState, make_server
from tiergraph.store import (
    SnapshotStore,
    append_metrics,
    read_metrics_csv,
    rebuild,
    run_scheduled,
    write_metrics_csv,
)
from tiergraph import evaluate

_DURATION_UNITS = {"s": 1, "m": 60, "h": 3600, "d": 86400}


def parse_duration(text: str) -> float:
    text = text.strip()
    if text and text[-1] in _DURATION_UNITS:
        return float(text[:-1]) * _DURATION_UNITS[text[-1]]
    return float(text)


def _load(config_path: str | None):
    path = resolve_config_path(config_path)
    try:
        configs, data_dir = load_config(path)
    except ConfigError as exc:
        raise click.ClickException(str(exc))
    return configs, SnapshotStore(data_dir)


def _require_snapshot(store: SnapshotStore):
    snapshot = store.load_latest()
    if snapshot is None:
        raise click.ClickException("no snapshot found; run `tiergraph sweep --once` first")
    return snapshot


@click.group()
@click.option("--config", "config_path", default=None, metavar="PATH",
              help="Config file (overrides TIERGRAPH_CONFIG; defaults to ./tiergraph.toml).")
@click.pass_context
def main(ctx: click.Context, config_path: str | None):
    ctx.obj = config_path


@main.command()
@click.option("--once", is_flag=True, help="Run exactly one sweep and exit.")
@click.option("--interval", default=None, metavar="DUR",
              help="Repeat every DUR (e.g. 30s, 5m, 1d).")
@click.pass_obj
def sweep(config_path, once: bool, interval: str | None):
    """Sweep the corpus, persist a snapshot, and append daily metrics."""
    configs, store = _load(config_path)
    if interval is None:
        once = True
    try:
        if once:
            snapshot = rebuild(configs, store=store)
            series = append_metrics(snapshot, read_metrics_csv(store.metrics_path))
            write_metrics_csv(series, store.metrics_path)
            click.echo(f"snapshot {snapshot.snapshot_id}: "
                       f"{len(snapshot.nodes)} nodes, {len(snapshot.edges)} edges")
        else:
            run_scheduled(configs, parse_duration(interval), store)
    except ConfigError as exc:
        raise click.ClickException(str(exc))


@main.group()
def snapshots():
    """Inspect persisted snapshots."""


@snapshots.command("list")
@click.pass_obj
def snapshots_list(config_path):
    _, store = _load(config_path)
    rows = store.list_snapshots()
    if not rows:
        click.echo("no snapshots")
        return
    for snapshot_id, created_at in rows:
        click.echo(f"{snapshot_id}\t{created_at}")


@main.command()
@click.option("--keep", type=int, required=True, help="Number of snapshots to retain.")
@click.pass_obj
def prune(config_path, keep: int):
    """Delete all but the most recent N snapshots."""
    _, store = _load(config_path)
    removed = store.prune(keep)
    click.echo(f"removed {len(removed)} snapshot(s)")


@main.group()
def metrics():
    """Daily metrics series."""


@metrics.command("export")
@click.option("--csv", "csv_path", required=True, metavar="PATH")
@click.pass_obj
def metrics_export(config_path, csv_path: str):
    _, store = _load(config_path)
    series = read_metrics_csv(store.metrics_path)
    write_metrics_csv(series, csv_path)
    click.echo(f"wrote {len(series.entries)} entries to {csv_path}")


@main.command("search")
@click.argument("keyword")
@click.option("--ci", is_flag=True, help="Case-insensitive matching.")
@click.pass_obj
def search_cmd(config_path, keyword: str, ci: bool):
    """Scan every corpus file for KEYWORD; print hits as canonical JSON."""
    configs, store = _load(config_path)
    snapshot = _require_snapshot(store)
    try:
        result = search(keyword, snapshot, snapshot.files, configs, case_insensitive=ci)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    sys.stdout.buffer.write(canonical_bytes(search_result_to_dict(result)))


@main.command("graph")
@click.option("--entry", required=True, help="Method id or fully-qualified member name.")
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="json")
@click.option("--max-depth", type=int, default=64, show_default=True)
@click.pass_obj
def graph_cmd(config_path, entry: str, fmt: str, max_depth: int):
    """Generate a top-down call graph from ENTRY."""
    _, store = _load(config_path)
    snapshot = _require_snapshot(store)
    try:
        entry_id = resolve_entry(snapshot, entry)
        graph = generate_call_graph(entry_id, snapshot, max_depth=max_depth)
    except EntryNotFoundError as exc:
        raise click.ClickException(str(exc))
    sys.stdout.buffer.write(export_graph(graph, fmt))


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def extract(file: str):
    """Dump the extraction model of one source file as JSON (debugging)."""
    log = DiagnosticLog()
    source = Path(file).read_text(encoding="utf-8", errors="replace")
    model = extract_file(source, Path(file).name, "", log)
    doc = {
        "path": model.path,
        "usings": [u.raw for u in model.usings],
        "classes": [
            {
                "name": cls.name,
                "namespace": cls.namespace,
                "qualifier": cls.qualifier,
                "parents": cls.parents,
                "is_static": cls.is_static,
                "methods": [
                    {
                        "id": m.member_id,
                        "accessibility": m.accessibility,
                        "return_type": m.return_type,
                        "name": m.name,
                        "parameters": [list(p) for p in m.parameters],
                        "contains_anonymous": m.contains_anonymous,
                        "call_sites": [
                            {
                                "receiver": s.receiver_token,
                                "member": s.member_token,
                                "invocation": s.is_invocation,
                                "offset": s.char_offset,
                            }
                            for s in m.call_sites
                        ],
                    }
                    for m in cls.methods
                ],
                "properties": [
                    {"access": p.access, "return_type": p.return_type, "name": p.name}
                    for p in cls.properties
                ],
                "fields": [
                    {"type": f.declared_type, "name": f.name, "is_custom": f.is_custom}
                    for f in cls.fields
                ],
            }
            for cls in model.classes
        ],
        "diagnostics": [
            {"code": d.code, "offset": d.offset, "message": d.message}
            for d in log.records
        ],
    }
    sys.stdout.buffer.write(canonical_bytes(doc))


@main.command()
@click.option("--suite", required=True, type=click.Path(exists=True, file_okay=False),
              help="Directory of .truth files (searched recursively).")
@click.option("--csv", "csv_path", default=None, metavar="PATH",
              help="Also write the per-entry report as CSV.")
@click.pass_obj
def bench(config_path, suite: str, csv_path: str | None):
    """Score generated call graphs against hand-traced ground truth."""
    _, store = _load(config_path)
    snapshot = _require_snapshot(store)
    truth_suite = evaluate.load_truth_suite(suite)
    report = evaluate.run_benchmark(snapshot, truth_suite)
    for r in report.per_entry:
        click.echo(
            f"{r.entry}: matched {r.matched_count}/{r.manual_count} "
            f"(recall {r.recall:.4f}, precision {r.precision:.4f})"
        )
    click.echo(f"aggregate accuracy: {report.aggregate_accuracy:.4f}")
    if report.manual_avg_minutes is not None and report.auto_avg_minutes is not None:
        click.echo(
            f"avg minutes: manual {report.manual_avg_minutes:.2f} "
            f"vs automated {report.auto_avg_minutes:.2f}"
            + (" (speedup)" if report.speedup_flag else "")
        )
    if csv_path:
        evaluate.write_report_csv(report, csv_path)
        click.echo(f"report written to {csv_path}")


@main.command()
@click.option("--addr", default="127.0.0.1:8077", show_default=True,
              help="Bind address host:port.")
@click.option("--ui", "ui_dir", default=None, type=click.Path(file_okay=False),
              help="Directory with the built UI bundle to serve at /.")
@click.option("--dev", is_flag=True, help="Permissive CORS for development.")
@click.pass_obj
def serve(config_path, addr: str, ui_dir: str | None, dev: bool):
    """Serve the read-only HTTP API (and optionally the UI bundle)."""
    configs, store = _load(config_path)
    state = AppState(configs, store)
    state.load_latest()
    host, _, port = addr.partition(":")
    server = make_server(
        state, host or "127.0.0.1", int(port or 0),
        ui_dir=Path(ui_dir) if ui_dir else None, dev=dev,
    )
    click.echo(f"serving on http://{server.server_address[0]}:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()


if __name__ == "__main__":
    main()

"""HTTP facade: endpoint behavior, error documents, CLI parity."""

import json
import threading
import urllib.error
import urllib.request

import pytest
from click.testing import CliRunner

from tiergraph.cli import main
from tiergraph.config import load_config
from tiergraph.service import AppState, make_server
from tiergraph.store import SnapshotStore, append_metrics, read_metrics_csv, rebuild, write_metrics_csv

SUBMIT_ORDER = "ShopDemo.Web.Checkout.CheckoutPage.SubmitOrder"


@pytest.fixture(scope="module")
def served(tmp_path_factory):
    """A live server over a freshly swept corpus copy; yields (base_url, config_path)."""
    import shutil

    from tests.conftest import CORPUS_DIR

    corpus = tmp_path_factory.mktemp("served") / "shopdemo"
    shutil.copytree(CORPUS_DIR, corpus)
    config_path = corpus / "tiergraph.toml"
    configs, data_dir = load_config(config_path)
    store = SnapshotStore(data_dir)
    snapshot = rebuild(configs, store=store)
    series = append_metrics(snapshot, read_metrics_csv(store.metrics_path))
    write_metrics_csv(series, store.metrics_path)

    state = AppState(configs, store)
    state.load_latest()
    server = make_server(state, "127.0.0.1", 0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address
    yield f"http://{host}:{port}", config_path
    server.shutdown()


def fetch(url):
    try:
        with urllib.request.urlopen(url) as response:
            return response.status, response.read()
    except urllib.error.HTTPError as err:
        return err.code, err.read()


def cli_bytes(config_path, *args):
    result = CliRunner().invoke(main, ["--config", str(config_path), *args])
    assert result.exit_code == 0, result.output
    return result.stdout_bytes


def test_search_endpoint_matches_cli_bytes(served):
    base, config_path = served
    status, body = fetch(f"{base}/api/search?q=GetCount")
    assert status == 200
    assert body == cli_bytes(config_path, "search", "GetCount")


def test_graph_endpoint_matches_cli_bytes(served):
    base, config_path = served
    status, body = fetch(f"{base}/api/graph?entry={SUBMIT_ORDER}")
    assert status == 200
    assert body == cli_bytes(config_path, "graph", "--entry", SUBMIT_ORDER, "--format", "json")


def test_search_missing_q_is_400(served):
    base, _ = served
    status, body = fetch(f"{base}/api/search")
    assert status == 400
    doc = json.loads(body)
    assert set(doc) == {"status", "code", "message"}
    assert doc["status"] == 400


def test_search_no_match_is_200_empty(served):
    base, _ = served
    status, body = fetch(f"{base}/api/search?q=zzz_nomatch")
    assert status == 200
    doc = json.loads(body)
    assert doc["code_hits"] == [] and doc["noncode_hits"] == []


def test_graph_unknown_entry_is_404(served):
    base, _ = served
    status, body = fetch(f"{base}/api/graph?entry=No.Such.Entry")
    assert status == 404
    assert json.loads(body)["code"] == "unknown_entry"


def test_graph_bad_depth_is_400(served):
    base, _ = served
    status, body = fetch(f"{base}/api/graph?entry={SUBMIT_ORDER}&max_depth=banana")
    assert status == 400
    assert json.loads(body)["code"] == "bad_depth"


def test_graph_contains_back_edge_for_shared_node(served):
    base, _ = served
    _, body = fetch(f"{base}/api/graph?entry={SUBMIT_ORDER}")
    doc = json.loads(body)
    assert len(doc["back_edges"]) == 1
    assert len(doc["nodes"]) == 11


def test_metrics_endpoint_matches_csv(served):
    base, config_path = served
    status, body = fetch(f"{base}/api/metrics/daily")
    assert status == 200
    doc = json.loads(body)
    _, data_dir = load_config(config_path)
    series = read_metrics_csv(SnapshotStore(data_dir).metrics_path)
    assert doc["entries"] == [
        {
            "date": e.date, "project": e.project_id,
            "graph_size": e.graph_size, "function_count": e.function_count,
        }
        for e in series.entries
    ]


def test_snapshot_summary(served):
    base, _ = served
    status, body = fetch(f"{base}/api/snapshot")
    assert status == 200
    doc = json.loads(body)
    assert doc["file_count"] == 31
    assert set(doc["per_project_counts"]) == {"web", "business", "data"}


def test_unknown_api_path_is_404(served):
    base, _ = served
    status, body = fetch(f"{base}/api/nope")
    assert status == 404


def test_post_is_rejected(served):
    base, _ = served
    request = urllib.request.Request(f"{base}/api/search?q=x", data=b"{}", method="POST")
    try:
        urllib.request.urlopen(request)
        status = 200
    except urllib.error.HTTPError as err:
        status = err.code
    assert status == 405


def test_fresh_store_returns_503(tmp_path, shopdemo_configs):
    state = AppState(shopdemo_configs, SnapshotStore(tmp_path / "empty"))
    state.load_latest()
    server = make_server(state, "127.0.0.1", 0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        host, port = server.server_address
        for path in ("/api/search?q=x", "/api/graph?entry=x", "/api/metrics/daily", "/api/snapshot"):
            status, body = fetch(f"http://{host}:{port}{path}")
            assert status == 503
            assert json.loads(body)["code"] == "no_snapshot"
    finally:
        server.shutdown()


def test_repeat_requests_are_byte_identical(served):
    base, _ = served
    first = fetch(f"{base}/api/graph?entry={SUBMIT_ORDER}")
    second = fetch(f"{base}/api/graph?entry={SUBMIT_ORDER}")
    assert first == second


def test_concurrent_reads_agree(served):
    base, _ = served
    results = []

    def worker():
        results.append(fetch(f"{base}/api/search?q=Order"))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1 and results[0][0] == 200


def test_cors_header_only_in_dev_mode(served):
    base, _ = served
    with urllib.request.urlopen(f"{base}/api/snapshot") as response:
        assert response.headers.get("Access-Control-Allow-Origin") is None


def test_static_ui_serving_and_dev_cors(tmp_path, shopdemo_configs):
    ui_dir = tmp_path / "ui"
    ui_dir.mkdir()
    (ui_dir / "index.html").write_text("<html><body>explorer</body></html>")
    state = AppState(shopdemo_configs, SnapshotStore(tmp_path / "store"))
    server = make_server(state, "127.0.0.1", 0, ui_dir=ui_dir, dev=True)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        host, port = server.server_address
        with urllib.request.urlopen(f"http://{host}:{port}/") as response:
            assert b"explorer" in response.read()
            assert response.headers["Access-Control-Allow-Origin"] == "*"
        status, _ = fetch(f"http://{host}:{port}/../etc/passwd")
        assert status == 404
    finally:
        server.shutdown()

"""Command-line surface: sweep, snapshots, metrics, search, graph, bench."""

import json

import pytest
from click.testing import CliRunner

from tiergraph.cli import main, parse_duration
from tiergraph.config import ENV_CONFIG, resolve_config_path
from tests.conftest import CORPUS_DIR


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def swept(runner, corpus_copy):
    """Corpus copy with one snapshot already persisted."""
    result = runner.invoke(main, ["--config", str(corpus_copy), "sweep", "--once"])
    assert result.exit_code == 0, result.output
    return corpus_copy


def invoke(runner, config, *args):
    return runner.invoke(main, ["--config", str(config), *args])


def test_parse_duration_units():
    assert parse_duration("30s") == 30
    assert parse_duration("5m") == 300
    assert parse_duration("1d") == 86400
    assert parse_duration("45") == 45


def test_config_resolution_order(monkeypatch, tmp_path):
    monkeypatch.delenv(ENV_CONFIG, raising=False)
    assert resolve_config_path(None).name == "tiergraph.toml"
    monkeypatch.setenv(ENV_CONFIG, str(tmp_path / "env.toml"))
    assert resolve_config_path(None) == tmp_path / "env.toml"
    assert resolve_config_path("cli.toml").name == "cli.toml"


def test_sweep_once_reports_counts(swept, runner):
    result = invoke(runner, swept, "snapshots", "list")
    assert result.exit_code == 0
    assert len(result.output.strip().splitlines()) == 1


def test_sweep_missing_root_fails_cleanly(runner, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text('[[project]]\nid = "ghost"\nroot = "missing"\n')
    result = runner.invoke(main, ["--config", str(bad), "sweep", "--once"])
    assert result.exit_code != 0
    assert "ghost" in result.output


def test_search_requires_snapshot(runner, corpus_copy):
    result = invoke(runner, corpus_copy, "search", "GetCount")
    assert result.exit_code != 0
    assert "sweep" in result.output


def test_search_output_is_canonical_json(swept, runner):
    result = invoke(runner, swept, "search", "GetCount")
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert len(doc["code_hits"]) == 2
    assert len(doc["noncode_hits"]) == 1


def test_graph_json_and_dot(swept, runner):
    entry = "ShopDemo.Web.Catalog.CatalogPage.LoadCatalog"
    as_json = invoke(runner, swept, "graph", "--entry", entry, "--format", "json")
    assert as_json.exit_code == 0
    assert len(json.loads(as_json.output)["nodes"]) == 5
    as_dot = invoke(runner, swept, "graph", "--entry", entry, "--format", "dot")
    assert as_dot.exit_code == 0
    assert as_dot.output.startswith("digraph")


def test_graph_unknown_entry_fails(swept, runner):
    result = invoke(runner, swept, "graph", "--entry", "No.Such.Thing")
    assert result.exit_code != 0


def test_metrics_export(swept, runner, tmp_path):
    out = tmp_path / "out.csv"
    result = invoke(runner, swept, "metrics", "export", "--csv", str(out))
    assert result.exit_code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "date,project,graph_size,function_count"
    assert len(lines) == 4  # header + one row per project


def test_bench_command(swept, runner, tmp_path):
    suite = swept.parent / "truth"
    out = tmp_path / "report.csv"
    result = invoke(runner, swept, "bench", "--suite", str(suite), "--csv", str(out))
    assert result.exit_code == 0, result.output
    assert "aggregate accuracy: 0.8684" in result.output
    assert "(speedup)" in result.output
    assert out.exists()


def test_extract_dump(runner):
    target = CORPUS_DIR / "ShopDemo.Business" / "Orders" / "OrderService.cs"
    result = runner.invoke(main, ["extract", str(target)])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert [c["name"] for c in doc["classes"]] == ["OrderService", "OrderResult"]
    assert doc["usings"][0] == "System"


def test_prune_keeps_most_recent(runner, corpus_copy):
    for _ in range(3):
        assert invoke(runner, corpus_copy, "sweep", "--once").exit_code == 0
    result = invoke(runner, corpus_copy, "prune", "--keep", "1")
    assert result.exit_code == 0
    assert "removed 2" in result.output


def test_env_var_supplies_config(runner, swept, monkeypatch):
    monkeypatch.setenv(ENV_CONFIG, str(swept))
    result = runner.invoke(main, ["snapshots", "list"])
    assert result.exit_code == 0
    assert result.output.strip()

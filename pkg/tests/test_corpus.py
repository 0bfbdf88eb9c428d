"""Corpus sweep: discovery, categorization, and layer bindings."""

import pytest

from tiergraph.config import (
    ConfigError,
    LayerKind,
    ProjectConfig,
    layer_of,
    load_config,
)
from tiergraph.corpus import FileCategory, categorize_file, corpus_hash, scan_corpus
from tests.conftest import CORPUS_DIR, SHOPDEMO_FILE_TOTAL


def _cfg(tmp_path, project_id="p", **kwargs):
    return ProjectConfig(project_id=project_id, root_path=tmp_path, **kwargs)


def test_scan_empty_directory(tmp_path):
    assert scan_corpus([_cfg(tmp_path)]) == []


def test_scan_shopdemo_matches_hand_count(shopdemo_configs):
    inventory = scan_corpus(shopdemo_configs)
    assert len(inventory) == SHOPDEMO_FILE_TOTAL


def test_scan_is_deterministic(shopdemo_configs):
    first = scan_corpus(shopdemo_configs)
    second = scan_corpus(shopdemo_configs)
    assert first == second


def test_scan_equal_trees_give_equal_inventories(tmp_path):
    for name in ("a", "b"):
        root = tmp_path / name
        (root / "Sub").mkdir(parents=True)
        (root / "One.cs").write_text("class One {}")
        (root / "Sub" / "two.xml").write_text("<x/>")
    inv_a = scan_corpus([_cfg(tmp_path / "a")])
    inv_b = scan_corpus([_cfg(tmp_path / "b")])
    assert inv_a == inv_b


def test_scan_orders_by_project_then_path(tmp_path):
    for name in ("beta", "alpha"):
        root = tmp_path / name
        root.mkdir()
        (root / "z.cs").write_text("")
        (root / "a.cs").write_text("")
    inventory = scan_corpus(
        [_cfg(tmp_path / "beta", "beta"), _cfg(tmp_path / "alpha", "alpha")]
    )
    assert [(r.project_id, r.path) for r in inventory] == [
        ("alpha", "a.cs"), ("alpha", "z.cs"), ("beta", "a.cs"), ("beta", "z.cs"),
    ]


def test_scan_skips_hidden_files_and_dirs(tmp_path):
    (tmp_path / ".git").mkdir()
    (tmp_path / ".git" / "config").write_text("x")
    (tmp_path / ".hidden.cs").write_text("class H {}")
    (tmp_path / "Seen.cs").write_text("class S {}")
    inventory = scan_corpus([_cfg(tmp_path)])
    assert [r.path for r in inventory] == ["Seen.cs"]


def test_scan_missing_root_names_project(tmp_path):
    with pytest.raises(ConfigError, match="ghost"):
        scan_corpus([_cfg(tmp_path / "nope", "ghost")])


def test_unreadable_file_recorded_with_skip_flag(tmp_path, monkeypatch):
    from pathlib import Path

    (tmp_path / "ok.cs").write_text("class A {}")
    (tmp_path / "broken.cs").write_text("class B {}")
    original = Path.read_bytes

    def flaky(self):
        if self.name == "broken.cs":
            raise OSError("io failure")
        return original(self)

    monkeypatch.setattr(Path, "read_bytes", flaky)
    inventory = scan_corpus([_cfg(tmp_path)])
    by_name = {r.path: r for r in inventory}
    assert by_name["broken.cs"].skipped and by_name["broken.cs"].content_hash == ""
    assert not by_name["ok.cs"].skipped


def test_every_record_is_exactly_one_category(shopdemo_configs):
    for record in scan_corpus(shopdemo_configs):
        assert record.category in (FileCategory.CodeBehind, FileCategory.NonCode)


def test_categorize_source_file(tmp_path):
    cfg = _cfg(tmp_path)
    assert categorize_file("Order.cs", cfg) is FileCategory.CodeBehind


@pytest.mark.parametrize("name", ["strings.resx", "view.html", "data.xml", "t.xslt"])
def test_categorize_resource_files(tmp_path, name):
    assert categorize_file(name, _cfg(tmp_path)) is FileCategory.NonCode


def test_categorize_extensionless(tmp_path):
    assert categorize_file("LICENSE", _cfg(tmp_path)) is FileCategory.NonCode


def test_corpus_hash_changes_with_content(tmp_path):
    (tmp_path / "a.cs").write_text("class A {}")
    before = corpus_hash(scan_corpus([_cfg(tmp_path)]))
    (tmp_path / "a.cs").write_text("class A { int x; }")
    after = corpus_hash(scan_corpus([_cfg(tmp_path)]))
    assert before != after


# -- layer_of ---------------------------------------------------------------

def _layers(tmp_path, bindings, third=()):
    return ProjectConfig(
        project_id="p", root_path=tmp_path,
        layer_bindings=tuple((p, LayerKind(l)) for p, l in bindings),
        third_party_namespaces=tuple(third),
    )


def test_layer_of_prefix_match(tmp_path):
    cfg = _layers(tmp_path, [("Shop.Web", "UI")])
    assert layer_of("Shop.Web.Controllers", cfg) is LayerKind.UI


def test_layer_of_longest_prefix_wins(tmp_path):
    cfg = _layers(tmp_path, [("Shop", "Business"), ("Shop.Data", "Data")])
    assert layer_of("Shop.Data.Repos", cfg) is LayerKind.Data


def test_layer_of_third_party(tmp_path):
    cfg = _layers(tmp_path, [("Shop", "Business")], third=["System"])
    assert layer_of("System.Text", cfg) is LayerKind.ThirdParty


def test_layer_of_unknown(tmp_path):
    cfg = _layers(tmp_path, [("Shop", "Business")])
    assert layer_of("Other.Place", cfg) is LayerKind.Unknown


def test_layer_of_requires_namespace(tmp_path):
    with pytest.raises(ValueError):
        layer_of("", _layers(tmp_path, []))


def test_layer_of_prefix_is_segment_aligned(tmp_path):
    cfg = _layers(tmp_path, [("Shop.Web", "UI")])
    assert layer_of("Shop.Webby.Pages", cfg) is LayerKind.Unknown


def test_layer_of_monotone_in_specificity(tmp_path):
    base = _layers(tmp_path, [("Shop", "Business")])
    extended = _layers(tmp_path, [("Shop", "Business"), ("Shop.Data", "Data")])
    for ns in ("Shop.Orders", "Shop.Web.Pages", "Shop"):
        assert layer_of(ns, base) is layer_of(ns, extended)


def test_duplicate_binding_prefixes_rejected(tmp_path):
    with pytest.raises(ConfigError):
        _layers(tmp_path, [("Shop", "UI"), ("Shop", "Data")])


# -- config file ------------------------------------------------------------

def test_load_config_shopdemo():
    configs, data_dir = load_config(CORPUS_DIR / "tiergraph.toml")
    assert [c.project_id for c in configs] == ["web", "business", "data"]
    assert data_dir == CORPUS_DIR / ".tiergraph"
    web = configs[0]
    assert ("ShopDemo.Web.Services", LayerKind.WebService) in web.layer_bindings
    assert "SoapHttpClientProtocol" in web.webservice_proxy_markers


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "none.toml")


def test_load_config_rejects_bad_layer(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text('[[project]]\nid = "x"\nroot = "."\nlayers = [["A", "Nope"]]\n')
    with pytest.raises(ConfigError):
        load_config(bad)

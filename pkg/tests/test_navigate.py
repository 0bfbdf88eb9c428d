"""Navigator: corpus search and call-graph generation/export."""

import time

import pytest

from tiergraph.config import LayerMap
from tiergraph.corpus import scan_corpus
from tiergraph.diagnostics import DiagnosticLog
from tiergraph.navigate import (
    EntryNotFoundError,
    StopReason,
    export_dot,
    export_graph,
    export_json,
    find_occurrences,
    generate_call_graph,
    graphs_equal,
    parse_graph_json,
    resolve_entry,
    search,
)
from tiergraph.store import assemble_snapshot
from tests.test_resolve import build

SUBMIT_ORDER = "ShopDemo.Web.Checkout.CheckoutPage.SubmitOrder"


def snapshot_from(sources, bindings, markers=(), third=()):
    models, index, layer_map, edges = build(sources, bindings, markers=markers, third=third)
    return assemble_snapshot([], models, edges, layer_map, DiagnosticLog())


# -- search ----------------------------------------------------------------------

def test_search_absent_keyword(shopdemo_snapshot, shopdemo_configs):
    result = search("zzz_nomatch", shopdemo_snapshot, shopdemo_snapshot.files, shopdemo_configs)
    assert result.code_hits == [] and result.noncode_hits == []
    assert result.entry_candidates == []


def test_search_getcount_partition(shopdemo_snapshot, shopdemo_configs):
    # Frozen from a hand scan: GetCount appears in two .cs files and one .resx.
    result = search("GetCount", shopdemo_snapshot, shopdemo_snapshot.files, shopdemo_configs)
    code_paths = sorted(h.record.path for h in result.code_hits)
    assert code_paths == ["Catalog/CatalogService.cs", "ProductRepository.cs"]
    assert [h.record.path for h in result.noncode_hits] == ["Resources/messages.resx"]
    assert result.entry_candidates == ["ShopDemo.Data.ProductRepository.GetCount()"]


def test_search_method_name_becomes_entry_candidate(shopdemo_snapshot, shopdemo_configs):
    result = search("SubmitOrder", shopdemo_snapshot, shopdemo_snapshot.files, shopdemo_configs)
    assert result.entry_candidates == [f"{SUBMIT_ORDER}()"]
    assert [h.record.path for h in result.code_hits] == ["Checkout/CheckoutPage.cs"]
    assert [h.record.path for h in result.noncode_hits] == ["Properties/labels.resx"]


def test_search_empty_keyword_rejected(shopdemo_snapshot, shopdemo_configs):
    with pytest.raises(ValueError):
        search("", shopdemo_snapshot, shopdemo_snapshot.files, shopdemo_configs)


def test_search_is_case_sensitive_by_default(shopdemo_snapshot, shopdemo_configs):
    result = search("getcount", shopdemo_snapshot, shopdemo_snapshot.files, shopdemo_configs)
    assert result.code_hits == []
    relaxed = search(
        "getcount", shopdemo_snapshot, shopdemo_snapshot.files, shopdemo_configs,
        case_insensitive=True,
    )
    assert relaxed.code_hits != []


def test_search_matches_bruteforce_scan(shopdemo_snapshot, shopdemo_configs):
    roots = {c.project_id: c.root_path for c in shopdemo_configs}
    for keyword in ("Order", "Trace", "resx", "select count(*)"):
        result = search(keyword, shopdemo_snapshot, shopdemo_snapshot.files, shopdemo_configs)
        got = {
            (h.record.project_id, h.record.path): h.offsets
            for h in result.code_hits + result.noncode_hits
        }
        expected = {}
        for record in shopdemo_snapshot.files:
            text = (roots[record.project_id] / record.path).read_text(errors="replace")
            offsets = tuple(
                i for i in range(len(text)) if text.startswith(keyword, i)
            )
            if offsets:
                expected[(record.project_id, record.path)] = offsets
        assert got == expected


def test_find_occurrences_counts_overlaps():
    assert find_occurrences("aaa", "aa") == (0, 1)


# -- call graph fixtures ------------------------------------------------------------

AB_CYCLE = {
    ("p", "AB.cs"): (
        "namespace N {\n"
        " public class A { private B b; public void Ping() { b.Pong(); } }\n"
        " public class B { private A a; public void Pong() { a.Ping(); } }\n"
        "}\n"
    )
}

SELF_LOOP = {
    ("p", "R.cs"): (
        "namespace N { public class R { public void Recurse() { this.Recurse(); } } }\n"
    )
}


def five_cycle():
    parts = ["namespace N {"]
    for i in range(1, 6):
        nxt = (i % 5) + 1
        parts.append(
            f" public class C{i} {{ private C{nxt} n; public void Go() {{ n.Go(); }} }}"
        )
    parts.append("}")
    return {("p", "Cycle.cs"): "\n".join(parts)}


BINDINGS = [("N", "Business")]


def test_empty_body_single_node_graph():
    snapshot = snapshot_from(
        {("p", "E.cs"): "namespace N { public class E { public void Leaf() { } } }"},
        BINDINGS,
    )
    graph = generate_call_graph("N.E.Leaf()", snapshot)
    assert [n.node_id for n in graph.nodes] == ["N.E.Leaf()"]
    assert graph.edges == [] and graph.back_edges == []
    assert graph.stop_reasons == {"N.E.Leaf()": StopReason.NO_MATCHES}


def test_two_cycle_shape():
    # Fixed by hand before implementation: 2 nodes, 1 tree edge, 1 back edge.
    snapshot = snapshot_from(AB_CYCLE, BINDINGS)
    graph = generate_call_graph("N.A.Ping()", snapshot)
    assert len(graph.nodes) == 2
    assert len(graph.edges) == 1
    assert graph.back_edges == [("N.B.Pong()", "N.A.Ping()")]


def test_self_loop_terminates():
    snapshot = snapshot_from(SELF_LOOP, BINDINGS)
    graph = generate_call_graph("N.R.Recurse()", snapshot)
    assert len(graph.nodes) == 1
    assert graph.back_edges == [("N.R.Recurse()", "N.R.Recurse()")]


@pytest.mark.parametrize("fixture", [SELF_LOOP, AB_CYCLE, five_cycle()])
def test_cycles_terminate_quickly(fixture):
    snapshot = snapshot_from(fixture, BINDINGS)
    entry = sorted(e.from_id for e in snapshot.edges)[0]
    start = time.perf_counter()
    graph = generate_call_graph(entry, snapshot)
    assert time.perf_counter() - start < 0.1
    assert len(graph.edges) == len(graph.nodes) - 1


def test_submit_order_node_count_matches_hand_trace(shopdemo_snapshot):
    # The manual trace in truth/clean/submit_order.truth lists 11 nodes.
    graph = generate_call_graph(resolve_entry(shopdemo_snapshot, SUBMIT_ORDER), shopdemo_snapshot)
    assert len(graph.nodes) == 11
    assert len(graph.edges) == 10


def test_data_layer_included_but_not_expanded(shopdemo_snapshot):
    graph = generate_call_graph(resolve_entry(shopdemo_snapshot, SUBMIT_ORDER), shopdemo_snapshot)
    insert_node = "ShopDemo.Data.OrderRepository.Insert(Order)"
    assert graph.stop_reasons[insert_node] == StopReason.DATA_LAYER
    assert all(a != insert_node for a, _, _ in graph.edges)


def test_every_leaf_has_stop_reason(shopdemo_snapshot):
    graph = generate_call_graph(resolve_entry(shopdemo_snapshot, SUBMIT_ORDER), shopdemo_snapshot)
    parents = {a for a, _, _ in graph.edges}
    for node in graph.nodes:
        if node.node_id not in parents:
            assert node.node_id in graph.stop_reasons


def test_child_ordering_follows_source_offsets(shopdemo_snapshot):
    entry = resolve_entry(shopdemo_snapshot, "ShopDemo.Web.Catalog.CatalogPage.LoadCatalog")
    graph = generate_call_graph(entry, shopdemo_snapshot)
    assert [n.name for n in graph.nodes] == [
        "ShopDemo.Web.Catalog.CatalogPage.LoadCatalog",
        "ShopDemo.Business.Catalog.CatalogService.FetchProduct",
        "ShopDemo.Data.ProductRepository.FindById",
        "ShopDemo.Data.Entities.Product.Name",
        "ShopDemo.Web.Common.PageBase.Trace",
    ]


def test_depth_cap_recorded():
    snapshot = snapshot_from(AB_CYCLE, BINDINGS)
    graph = generate_call_graph("N.A.Ping()", snapshot, max_depth=1)
    assert graph.stop_reasons["N.B.Pong()"] == StopReason.DEPTH_CAP


def test_unknown_entry_raises(shopdemo_snapshot):
    with pytest.raises(EntryNotFoundError):
        generate_call_graph("No.Such.Entry()", shopdemo_snapshot)


def test_resolve_entry_by_name_and_id(shopdemo_snapshot):
    by_name = resolve_entry(shopdemo_snapshot, SUBMIT_ORDER)
    assert by_name == f"{SUBMIT_ORDER}()"
    assert resolve_entry(shopdemo_snapshot, by_name) == by_name
    with pytest.raises(EntryNotFoundError):
        resolve_entry(shopdemo_snapshot, "Nope")


def test_stop_reason_vocabulary(shopdemo_snapshot):
    graph = generate_call_graph(resolve_entry(shopdemo_snapshot, SUBMIT_ORDER), shopdemo_snapshot)
    assert set(graph.stop_reasons.values()) <= set(StopReason.ALL)


# -- export --------------------------------------------------------------------------

def test_dot_single_node():
    snapshot = snapshot_from(
        {("p", "E.cs"): "namespace N { public class E { public void Leaf() { } } }"},
        BINDINGS,
    )
    dot = export_dot(generate_call_graph("N.E.Leaf()", snapshot)).decode()
    assert dot.startswith("digraph")
    assert dot.count('"N.E.Leaf()"') == 1


def test_dot_back_edge_styled():
    snapshot = snapshot_from(AB_CYCLE, BINDINGS)
    dot = export_dot(generate_call_graph("N.A.Ping()", snapshot)).decode()
    assert '"N.B.Pong()" -> "N.A.Ping()" [style=dashed, constraint=false];' in dot


def test_json_round_trip(shopdemo_snapshot):
    graph = generate_call_graph(resolve_entry(shopdemo_snapshot, SUBMIT_ORDER), shopdemo_snapshot)
    again = parse_graph_json(export_json(graph))
    assert graphs_equal(graph, again)


def test_export_rejects_unknown_format(shopdemo_snapshot):
    graph = generate_call_graph(resolve_entry(shopdemo_snapshot, SUBMIT_ORDER), shopdemo_snapshot)
    with pytest.raises(ValueError):
        export_graph(graph, "svg")


def test_export_is_deterministic(shopdemo_snapshot):
    entry = resolve_entry(shopdemo_snapshot, SUBMIT_ORDER)
    a = export_json(generate_call_graph(entry, shopdemo_snapshot))
    b = export_json(generate_call_graph(entry, shopdemo_snapshot))
    assert a == b

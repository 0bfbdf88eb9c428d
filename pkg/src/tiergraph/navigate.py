"""Keyword search over the corpus and top-down call-graph generation.

Search is a case-sensitive substring scan over every inventory file,
partitioned into code and non-code hits, with method-name matches offered
as graph entry points. Graph generation expands resolved edges depth-first
from an entry function and stops at the data layer, third-party and
web-service-proxy leaves, lambdas, unresolved calls, revisited nodes, and
the depth cap; every leaf records why it stopped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from tiergraph.config import LayerKind, ProjectConfig
from tiergraph.corpus import FileCategory, FileRecord
from tiergraph.resolve import EdgeKind, ResolvedEdge
from tiergraph.store import GraphNode, GraphSnapshot

DEFAULT_MAX_DEPTH = 64


class EntryNotFoundError(Exception):
    pass


class StopReason:
    NO_MATCHES = "NoMatches"
    DATA_LAYER = "DataLayerReached"
    THIRD_PARTY = "ThirdPartyLeaf"
    ANONYMOUS = "AnonymousLeaf"
    WEBSERVICE_PROXY = "WebServiceProxyLeaf"
    DEPTH_CAP = "DepthCap"
    UNRESOLVED = "Unresolved"

    ALL = (
        NO_MATCHES, DATA_LAYER, THIRD_PARTY, ANONYMOUS,
        WEBSERVICE_PROXY, DEPTH_CAP, UNRESOLVED,
    )


@dataclass(frozen=True)
class SearchHit:
    record: FileRecord
    offsets: tuple[int, ...]


@dataclass
class SearchResult:
    keyword: str
    code_hits: list[SearchHit] = field(default_factory=list)
    noncode_hits: list[SearchHit] = field(default_factory=list)
    entry_candidates: list[str] = field(default_factory=list)


def find_occurrences(text: str, keyword: str) -> tuple[int, ...]:
    """Every start index where keyword occurs (overlaps included)."""
    offsets = []
    idx = text.find(keyword)
    while idx >= 0:
        offsets.append(idx)
        idx = text.find(keyword, idx + 1)
    return tuple(offsets)


def search(
    keyword: str,
    snapshot: GraphSnapshot,
    inventory: list[FileRecord],
    configs: list[ProjectConfig],
    case_insensitive: bool = False,
) -> SearchResult:
    """Substring scan over all inventory files plus method-name candidates."""
    if not keyword:
        raise ValueError("search keyword must be non-empty")
    roots = {cfg.project_id: Path(cfg.root_path) for cfg in configs}
    needle = keyword.lower() if case_insensitive else keyword
    result = SearchResult(keyword=keyword)
    for record in inventory:
        if record.skipped or record.project_id not in roots:
            continue
        try:
            text = (roots[record.project_id] / record.path).read_text(
                encoding="utf-8", errors="replace"
            )
        except OSError:
            continue
        haystack = text.lower() if case_insensitive else text
        offsets = find_occurrences(haystack, needle)
        if not offsets:
            continue
        hit = SearchHit(record=record, offsets=offsets)
        if record.category is FileCategory.CodeBehind:
            result.code_hits.append(hit)
        else:
            result.noncode_hits.append(hit)
    for node in snapshot.nodes:
        if node.node_kind != "method":
            continue
        simple = node.name.rsplit(".", 1)[-1]
        target = simple.lower() if case_insensitive else simple
        if needle in target:
            result.entry_candidates.append(node.node_id)
    result.entry_candidates.sort()
    return result


@dataclass
class CallGraph:
    root: str
    nodes: list[GraphNode]  # depth-first preorder
    edges: list[tuple[str, str, str]]  # (from, to, kind), traversal order
    back_edges: list[tuple[str, str]]
    stop_reasons: dict[str, str]


_EDGE_KIND_STOP = {
    EdgeKind.ThirdParty: StopReason.THIRD_PARTY,
    EdgeKind.AnonymousLeaf: StopReason.ANONYMOUS,
    EdgeKind.WebServiceProxy: StopReason.WEBSERVICE_PROXY,
    EdgeKind.Unresolved: StopReason.UNRESOLVED,
}


def generate_call_graph(
    entry: str,
    snapshot: GraphSnapshot,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> CallGraph:
    """Expand the call tree below one entry member.

    Data-layer nodes are included but never expanded; a node seen twice
    becomes a back edge instead of a duplicate, so the visible structure
    stays a tree and generation terminates on any edge set.
    """
    node_map = {n.node_id: n for n in snapshot.nodes}
    if entry not in node_map:
        raise EntryNotFoundError(f"unknown entry {entry!r}")
    children: dict[str, list[ResolvedEdge]] = {}
    for edge in snapshot.edges:
        children.setdefault(edge.from_id, []).append(edge)
    for edge_list in children.values():
        edge_list.sort(key=lambda e: (e.char_offset, e.to_id))

    graph = CallGraph(entry, [], [], [], {})
    visited = {entry}
    back_seen: set[tuple[str, str]] = set()

    # Iterative preorder so a deep max_depth cannot hit the recursion limit.
    graph.nodes.append(node_map[entry])
    stack = [(entry, 0, iter(children.get(entry, [])), [0])]
    root_has_children = _stop_before_expand(node_map[entry], None, 0, max_depth, is_root=True)
    if root_has_children is not None:
        graph.stop_reasons[entry] = root_has_children
        stack = []
    while stack:
        node_id, depth, edge_iter, tree_count = stack[-1]
        edge = next(edge_iter, None)
        if edge is None:
            stack.pop()
            if tree_count[0] == 0 and node_id not in graph.stop_reasons:
                graph.stop_reasons[node_id] = StopReason.NO_MATCHES
            continue
        target = edge.to_id
        if target in visited:
            pair = (node_id, target)
            if pair not in back_seen:
                back_seen.add(pair)
                graph.back_edges.append(pair)
            continue
        visited.add(target)
        tree_count[0] += 1
        graph.edges.append((node_id, target, edge.kind.value))
        target_node = node_map[target]
        graph.nodes.append(target_node)
        reason = _stop_before_expand(target_node, edge.kind, depth + 1, max_depth, is_root=False)
        if reason is not None:
            graph.stop_reasons[target] = reason
            continue
        stack.append((target, depth + 1, iter(children.get(target, [])), [0]))
    return graph


def _stop_before_expand(
    node: GraphNode,
    via_kind: EdgeKind | None,
    depth: int,
    max_depth: int,
    is_root: bool,
) -> str | None:
    if via_kind in _EDGE_KIND_STOP:
        return _EDGE_KIND_STOP[via_kind]
    if not is_root and node.layer is LayerKind.Data:
        return StopReason.DATA_LAYER
    if depth >= max_depth:
        return StopReason.DEPTH_CAP
    return None


# ---------------------------------------------------------------------------
# Export

LAYER_COLORS = {
    LayerKind.UI: "#4477aa",
    LayerKind.Business: "#228833",
    LayerKind.Data: "#ccbb44",
    LayerKind.WebService: "#66ccee",
    LayerKind.ThirdParty: "#aa3377",
    LayerKind.Unknown: "#bbbbbb",
}


def call_graph_to_dict(graph: CallGraph) -> dict:
    return {
        "root": graph.root,
        "nodes": [
            {
                "id": n.node_id,
                "name": n.name,
                "kind": n.node_kind,
                "layer": n.layer.value,
            }
            for n in graph.nodes
        ],
        "edges": [
            {"from": a, "to": b, "kind": kind} for a, b, kind in graph.edges
        ],
        "back_edges": [{"from": a, "to": b} for a, b in graph.back_edges],
        "stop_reasons": dict(sorted(graph.stop_reasons.items())),
    }


def call_graph_from_dict(data: dict) -> CallGraph:
    return CallGraph(
        root=data["root"],
        nodes=[
            GraphNode(
                node_id=n["id"], name=n["name"], node_kind=n["kind"],
                layer=LayerKind(n["layer"]),
            )
            for n in data["nodes"]
        ],
        edges=[(e["from"], e["to"], e["kind"]) for e in data["edges"]],
        back_edges=[(e["from"], e["to"]) for e in data["back_edges"]],
        stop_reasons=dict(data["stop_reasons"]),
    )


def graphs_equal(a: CallGraph, b: CallGraph) -> bool:
    """Structural equality ignoring node project/file provenance."""
    strip = lambda nodes: [
        (n.node_id, n.name, n.node_kind, n.layer) for n in nodes
    ]
    return (
        a.root == b.root
        and strip(a.nodes) == strip(b.nodes)
        and a.edges == b.edges
        and a.back_edges == b.back_edges
        and a.stop_reasons == b.stop_reasons
    )


def export_json(graph: CallGraph) -> bytes:
    from tiergraph.jsonio import canonical_bytes

    return canonical_bytes(call_graph_to_dict(graph))


def export_dot(graph: CallGraph) -> bytes:
    """Graphviz text with one cluster per layer and dashed back edges."""
    lines = ["digraph callgraph {", "  rankdir=TB;", '  node [shape=box, style=filled];']
    by_layer: dict[LayerKind, list[GraphNode]] = {}
    for node in graph.nodes:
        by_layer.setdefault(node.layer, []).append(node)
    for layer in sorted(by_layer, key=lambda l: l.value):
        lines.append(f"  subgraph cluster_{layer.value} {{")
        lines.append(f'    label="{layer.value}";')
        for node in by_layer[layer]:
            label = node.name
            reason = graph.stop_reasons.get(node.node_id)
            if reason:
                label += f"\\n[{reason}]"
            color = LAYER_COLORS.get(node.layer, "#bbbbbb")
            lines.append(
                f'    "{node.node_id}" [label="{label}", fillcolor="{color}"];'
            )
        lines.append("  }")
    for a, b, _kind in graph.edges:
        lines.append(f'  "{a}" -> "{b}";')
    for a, b in graph.back_edges:
        lines.append(f'  "{a}" -> "{b}" [style=dashed, constraint=false];')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def export_graph(graph: CallGraph, format: str) -> bytes:
    if format == "json":
        return export_json(graph)
    if format == "dot":
        return export_dot(graph)
    raise ValueError(f"unknown export format {format!r}")


def parse_graph_json(data: bytes | str) -> CallGraph:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return call_graph_from_dict(json.loads(data))


def resolve_entry(snapshot: GraphSnapshot, entry: str) -> str:
    """Accept a node id or a unique fully-qualified member name."""
    node_map = {n.node_id for n in snapshot.nodes}
    if entry in node_map:
        return entry
    matches = [
        n.node_id
        for n in snapshot.nodes
        if n.node_kind in ("method", "property") and n.name == entry
    ]
    if len(matches) == 1:
        return matches[0]
    if len(matches) > 1:
        raise EntryNotFoundError(
            f"entry {entry!r} is ambiguous: {', '.join(sorted(matches))}"
        )
    raise EntryNotFoundError(f"unknown entry {entry!r}")


def search_result_to_dict(result: SearchResult) -> dict:
    def hits(items: list[SearchHit]) -> list[dict]:
        return [
            {
                "path": h.record.path,
                "project": h.record.project_id,
                "category": h.record.category.value,
                "offsets": list(h.offsets),
            }
            for h in items
        ]

    return {
        "keyword": result.keyword,
        "code_hits": hits(result.code_hits),
        "noncode_hits": hits(result.noncode_hits),
        "entry_candidates": list(result.entry_candidates),
    }

import { describe, expect, it, vi } from "vitest";

import { STOP_BADGES } from "../src/badges.js";
import { renderGraph, renderSearchResults } from "../src/render.js";
import type { CallGraphJson, SearchResultJson, StopReason } from "../src/types.js";
import graphFixture from "./fixtures/graph_submit_order.json";
import searchFixture from "./fixtures/search_getcount.json";

const graph = graphFixture as CallGraphJson;
const search = searchFixture as SearchResultJson;

const noHandlers = { onToggle: () => {}, onExpandDeeper: () => {} };

describe("graph rendering", () => {
  it("renders exactly one element per node in the JSON", () => {
    const view = renderGraph(graph, new Set(), noHandlers);
    const rendered = view.querySelectorAll("li.graph-node");
    expect(rendered.length).toBe(graph.nodes.length);
  });

  it("shows counts equal to the fetched array lengths", () => {
    const view = renderGraph(graph, new Set(), noHandlers);
    const counts = view.querySelector(".graph-counts")?.textContent ?? "";
    expect(counts).toContain(`${graph.nodes.length} nodes`);
    expect(counts).toContain(`${graph.edges.length} edges`);
  });

  it("badges every leaf with its stop reason's distinct class", () => {
    const view = renderGraph(graph, new Set(), noHandlers);
    for (const [nodeId, reason] of Object.entries(graph.stop_reasons)) {
      const item = view.querySelector(`li[data-node-id="${nodeId}"]`);
      expect(item, nodeId).not.toBeNull();
      const badge = item!.querySelector(`.${STOP_BADGES[reason as StopReason].className}`);
      expect(badge, `${nodeId} should carry a ${reason} badge`).not.toBeNull();
    }
  });

  it("marks back edges as a visible cycle indicator", () => {
    const view = renderGraph(graph, new Set(), noHandlers);
    const indicators = view.querySelectorAll(".back-edge");
    expect(indicators.length).toBe(graph.back_edges.length);
    expect(indicators[0]!.textContent).toContain("cycle");
  });

  it("collapsed nodes hide their subtree", () => {
    const expanded = renderGraph(graph, new Set(), noHandlers);
    const collapsed = renderGraph(graph, new Set([graph.root]), noHandlers);
    expect(collapsed.querySelectorAll("li.graph-node").length).toBe(1);
    expect(expanded.querySelectorAll("li.graph-node").length).toBe(graph.nodes.length);
  });

  it("renders a legend", () => {
    const view = renderGraph(graph, new Set(), noHandlers);
    expect(view.querySelectorAll(".legend-entry").length).toBeGreaterThan(0);
  });
});

describe("search rendering", () => {
  it("renders code hits, non-code hits, and entry candidates as groups", () => {
    const view = renderSearchResults(search, { onPickEntry: () => {} });
    expect(view.querySelectorAll(".code-hits .hit").length).toBe(search.code_hits.length);
    expect(view.querySelectorAll(".noncode-hits .hit").length).toBe(
      search.noncode_hits.length,
    );
    expect(view.querySelectorAll(".entry-candidates .hit").length).toBe(
      search.entry_candidates.length,
    );
  });

  it("clicking an entry candidate reports its id", () => {
    const picked = vi.fn();
    const view = renderSearchResults(search, { onPickEntry: picked });
    const link = view.querySelector<HTMLAnchorElement>(".entry-link")!;
    link.click();
    expect(picked).toHaveBeenCalledWith(search.entry_candidates[0]);
  });

  it("shows a no-results state for an empty result", () => {
    const empty: SearchResultJson = {
      keyword: "zzz",
      code_hits: [],
      noncode_hits: [],
      entry_candidates: [],
    };
    const view = renderSearchResults(empty, { onPickEntry: () => {} });
    expect(view.querySelector(".no-results")).not.toBeNull();
  });
});

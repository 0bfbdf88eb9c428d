// The paper-shaped workflow: type a keyword, click a hit, read the graph.
import { beforeEach, describe, expect, it } from "vitest";

import { ExplorerApp } from "../src/main.js";
import type { CallGraphJson, SearchResultJson } from "../src/types.js";
import deeperFixture from "./fixtures/graph_submit_order.json";
import cappedFixture from "./fixtures/graph_submit_order_depth1.json";
import searchFixture from "./fixtures/search_getcount.json";

const graphDeep = deeperFixture as CallGraphJson;
const graphCapped = cappedFixture as CallGraphJson;
const search = searchFixture as SearchResultJson;

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

function makeHosts(): { results: HTMLElement; graph: HTMLElement } {
  const results = document.createElement("section");
  const graph = document.createElement("section");
  document.body.replaceChildren(results, graph);
  return { results, graph };
}

describe("search -> click -> graph workflow", () => {
  let hosts: { results: HTMLElement; graph: HTMLElement };

  beforeEach(() => {
    hosts = makeHosts();
  });

  it("renders the graph with node count equal to the JSON node count", async () => {
    const fetchFn = async (url: string) => {
      if (url.startsWith("/api/search")) return jsonResponse(search);
      if (url.startsWith("/api/graph")) return jsonResponse(graphDeep);
      throw new Error(`unexpected url ${url}`);
    };
    const app = new ExplorerApp(hosts.results, hosts.graph, fetchFn as typeof fetch);

    await app.runSearch("GetCount");
    const link = hosts.results.querySelector<HTMLAnchorElement>(".entry-link");
    expect(link).not.toBeNull();
    link!.click();
    await new Promise((resolve) => setTimeout(resolve, 0));

    const rendered = hosts.graph.querySelectorAll("li.graph-node");
    expect(rendered.length).toBe(graphDeep.nodes.length);
    expect(hosts.graph.querySelector(".graph-counts")?.textContent).toContain(
      `${graphDeep.nodes.length} nodes`,
    );
  });

  it("expand-deeper on a DepthCap leaf refetches with a larger max_depth", async () => {
    const depths: number[] = [];
    const fetchFn = async (url: string) => {
      if (url.startsWith("/api/graph")) {
        const depth = Number(new URL(url, "http://x").searchParams.get("max_depth"));
        depths.push(depth);
        return jsonResponse(depth <= 1 ? graphCapped : graphDeep);
      }
      throw new Error(`unexpected url ${url}`);
    };
    const app = new ExplorerApp(hosts.results, hosts.graph, fetchFn as typeof fetch);

    await app.showGraph(graphCapped.root, 1);
    const button = hosts.graph.querySelector<HTMLButtonElement>(".expand-deeper");
    expect(button).not.toBeNull();
    button!.click();
    await new Promise((resolve) => setTimeout(resolve, 0));

    expect(depths).toEqual([1, 2]);
    expect(hosts.graph.querySelectorAll("li.graph-node").length).toBe(
      graphDeep.nodes.length,
    );
  });

  it("discards stale responses by request token", async () => {
    // The slow first response resolves after the second; the UI must keep
    // showing the second search's empty-result state, not the stale hits.
    const secondResult: SearchResultJson = {
      keyword: "second",
      code_hits: [],
      noncode_hits: [],
      entry_candidates: [],
    };
    let releaseFirst: (value: Response) => void = () => {};
    const first = new Promise<Response>((resolve) => {
      releaseFirst = resolve;
    });
    let calls = 0;
    const fetchFn = (url: string) => {
      calls += 1;
      if (calls === 1) return first;
      return Promise.resolve(jsonResponse(secondResult));
    };
    const app = new ExplorerApp(hosts.results, hosts.graph, fetchFn as typeof fetch);

    const slow = app.runSearch("first");
    await app.runSearch("second");
    releaseFirst(jsonResponse(search));
    await slow;

    expect(hosts.results.textContent).toContain('No results for "second"');
    expect(hosts.results.querySelectorAll(".hit").length).toBe(0);
  });

  it("shows API errors inline instead of a blank screen", async () => {
    const fetchFn = async () =>
      jsonResponse({ status: 503, code: "no_snapshot", message: "run a sweep" }, 503);
    const app = new ExplorerApp(hosts.results, hosts.graph, fetchFn as typeof fetch);
    await app.runSearch("anything");
    const error = hosts.results.querySelector(".api-error");
    expect(error).not.toBeNull();
    expect(error!.textContent).toContain("no_snapshot");
  });

  it("unknown entry shows an inline error in the graph pane", async () => {
    const fetchFn = async () =>
      jsonResponse({ status: 404, code: "unknown_entry", message: "nope" }, 404);
    const app = new ExplorerApp(hosts.results, hosts.graph, fetchFn as typeof fetch);
    await app.showGraph("No.Such.Entry");
    expect(hosts.graph.querySelector(".api-error")).not.toBeNull();
  });

  it("toggling a node collapses and re-expands its subtree", async () => {
    const fetchFn = async () => jsonResponse(graphDeep);
    const app = new ExplorerApp(hosts.results, hosts.graph, fetchFn as typeof fetch);
    await app.showGraph(graphDeep.root);
    expect(hosts.graph.querySelectorAll("li.graph-node").length).toBe(
      graphDeep.nodes.length,
    );
    app.toggleNode(graphDeep.root);
    expect(hosts.graph.querySelectorAll("li.graph-node").length).toBe(1);
    app.toggleNode(graphDeep.root);
    expect(hosts.graph.querySelectorAll("li.graph-node").length).toBe(
      graphDeep.nodes.length,
    );
  });
});

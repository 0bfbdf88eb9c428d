import { ApiError, fetchGraph, searchCode } from "./api.js";
import { renderError, renderGraph, renderSearchResults } from "./render.js";
import { DEFAULT_MAX_DEPTH, RequestGate, ViewState, initialState } from "./state.js";

// Wires the two views together: type a keyword, pick an entry function
// from the hits, explore the layered call graph below it.
export class ExplorerApp {
  readonly state: ViewState = initialState();
  private readonly gate = new RequestGate();

  constructor(
    private readonly resultsHost: HTMLElement,
    private readonly graphHost: HTMLElement,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  async runSearch(keyword: string): Promise<void> {
    if (!keyword) return;
    this.state.keyword = keyword;
    const token = this.gate.next();
    try {
      const result = await searchCode(keyword, this.fetchFn);
      if (!this.gate.isCurrent(token)) return; // stale response
      this.resultsHost.replaceChildren(
        renderSearchResults(result, {
          onPickEntry: (entry) => void this.showGraph(entry),
        }),
      );
    } catch (err) {
      if (!this.gate.isCurrent(token)) return;
      this.resultsHost.replaceChildren(renderError(describe(err)));
    }
  }

  async showGraph(entry: string, maxDepth = DEFAULT_MAX_DEPTH): Promise<void> {
    const token = this.gate.next();
    try {
      const graph = await fetchGraph(entry, maxDepth, this.fetchFn);
      if (!this.gate.isCurrent(token)) return;
      this.state.selectedEntry = entry;
      this.state.maxDepth = maxDepth;
      this.state.graph = graph;
      this.state.collapsedNodes = new Set();
      this.redrawGraph();
    } catch (err) {
      if (!this.gate.isCurrent(token)) return;
      this.graphHost.replaceChildren(renderError(describe(err)));
    }
  }

  toggleNode(nodeId: string): void {
    if (this.state.collapsedNodes.has(nodeId)) {
      this.state.collapsedNodes.delete(nodeId);
    } else {
      this.state.collapsedNodes.add(nodeId);
    }
    this.redrawGraph();
  }

  private redrawGraph(): void {
    if (!this.state.graph || !this.state.selectedEntry) return;
    this.graphHost.replaceChildren(
      renderGraph(this.state.graph, this.state.collapsedNodes, {
        onToggle: (id) => this.toggleNode(id),
        onExpandDeeper: () =>
          void this.showGraph(this.state.selectedEntry!, this.state.maxDepth * 2),
      }),
    );
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  return String(err);
}

export function mount(root: Document = document): ExplorerApp {
  const form = root.getElementById("search-form") as HTMLFormElement;
  const input = root.getElementById("search-input") as HTMLInputElement;
  const results = root.getElementById("results") as HTMLElement;
  const graph = root.getElementById("graph") as HTMLElement;
  const app = new ExplorerApp(results, graph);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void app.runSearch(input.value.trim());
  });
  return app;
}

declare global {
  interface Window {
    __tiergraphBoot?: boolean;
  }
}

if (typeof window !== "undefined" && window.__tiergraphBoot !== false) {
  if (typeof document !== "undefined" && document.getElementById("search-form")) {
    mount();
  }
}

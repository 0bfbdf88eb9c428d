import { LAYER_COLORS, LAYER_ORDER, STOP_BADGES } from "./badges.js";
import type {
  CallGraphJson,
  GraphNodeJson,
  SearchHitJson,
  SearchResultJson,
} from "./types.js";

export interface SearchHandlers {
  onPickEntry: (entryId: string) => void;
}

export interface GraphHandlers {
  onToggle: (nodeId: string) => void;
  onExpandDeeper: () => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function hitList(title: string, hits: SearchHitJson[], cls: string): HTMLElement {
  const group = el("section", `hit-group ${cls}`);
  group.appendChild(el("h3", "hit-group-title", `${title} (${hits.length})`));
  const list = el("ul", "hit-list");
  for (const hit of hits) {
    const item = el("li", "hit");
    item.appendChild(el("span", "hit-path", `${hit.project}:${hit.path}`));
    item.appendChild(el("span", "hit-count", `${hit.offsets.length} match(es)`));
    list.appendChild(item);
  }
  group.appendChild(list);
  return group;
}

export function renderSearchResults(
  result: SearchResultJson,
  handlers: SearchHandlers,
): HTMLElement {
  const container = el("div", "search-results");
  const total =
    result.code_hits.length + result.noncode_hits.length + result.entry_candidates.length;
  if (total === 0) {
    container.appendChild(el("p", "no-results", `No results for "${result.keyword}"`));
    return container;
  }

  const entries = el("section", "hit-group entry-candidates");
  entries.appendChild(
    el("h3", "hit-group-title", `Entry functions (${result.entry_candidates.length})`),
  );
  const entryList = el("ul", "hit-list");
  for (const candidate of result.entry_candidates) {
    const item = el("li", "hit");
    const link = el("a", "entry-link", candidate);
    link.href = "#";
    link.addEventListener("click", (event) => {
      event.preventDefault();
      handlers.onPickEntry(candidate);
    });
    item.appendChild(link);
    entryList.appendChild(item);
  }
  entries.appendChild(entryList);

  container.appendChild(entries);
  container.appendChild(hitList("Code files", result.code_hits, "code-hits"));
  container.appendChild(hitList("Non-code files", result.noncode_hits, "noncode-hits"));
  return container;
}

export function renderError(message: string): HTMLElement {
  const box = el("div", "api-error");
  box.appendChild(el("strong", undefined, "Request failed: "));
  box.appendChild(el("span", undefined, message));
  return box;
}

export function renderLegend(): HTMLElement {
  const legend = el("div", "legend");
  for (const layer of LAYER_ORDER) {
    const entry = el("span", "legend-entry", layer);
    entry.style.borderLeftColor = LAYER_COLORS[layer];
    legend.appendChild(entry);
  }
  return legend;
}

function childMap(graph: CallGraphJson): Map<string, string[]> {
  const children = new Map<string, string[]>();
  for (const edge of graph.edges) {
    const bucket = children.get(edge.from);
    if (bucket) bucket.push(edge.to);
    else children.set(edge.from, [edge.to]);
  }
  return children;
}

function renderNode(
  node: GraphNodeJson,
  graph: CallGraphJson,
  children: Map<string, string[]>,
  nodesById: Map<string, GraphNodeJson>,
  collapsed: Set<string>,
  handlers: GraphHandlers,
): HTMLElement {
  const item = el("li", "graph-node");
  item.dataset.nodeId = node.id;

  const label = el("span", "node-label");
  label.style.backgroundColor = LAYER_COLORS[node.layer];
  label.appendChild(el("span", "node-name", node.name));
  label.appendChild(el("span", "node-layer", node.layer));

  const reason = graph.stop_reasons[node.id];
  if (reason !== undefined) {
    const badge = STOP_BADGES[reason];
    label.appendChild(el("span", `badge ${badge.className}`, badge.label));
    if (reason === "DepthCap") {
      const deeper = el("button", "expand-deeper", "expand deeper");
      deeper.addEventListener("click", (event) => {
        event.stopPropagation();
        handlers.onExpandDeeper();
      });
      label.appendChild(deeper);
    }
  }

  const loops = graph.back_edges.filter((b) => b.from === node.id);
  for (const back of loops) {
    const target = nodesById.get(back.to);
    label.appendChild(
      el("span", "back-edge", `cycle -> ${target ? target.name : back.to}`),
    );
  }

  const kids = children.get(node.id) ?? [];
  if (kids.length > 0) {
    label.classList.add("expandable");
    label.addEventListener("click", () => handlers.onToggle(node.id));
  }
  item.appendChild(label);

  if (kids.length > 0 && !collapsed.has(node.id)) {
    const sub = el("ul", "graph-children");
    for (const kid of kids) {
      const kidNode = nodesById.get(kid);
      if (kidNode) {
        sub.appendChild(
          renderNode(kidNode, graph, children, nodesById, collapsed, handlers),
        );
      }
    }
    item.appendChild(sub);
  }
  return item;
}

export function renderGraph(
  graph: CallGraphJson,
  collapsed: Set<string>,
  handlers: GraphHandlers,
): HTMLElement {
  const container = el("div", "graph-view");
  const header = el("div", "graph-header");
  header.appendChild(
    el(
      "span",
      "graph-counts",
      `${graph.nodes.length} nodes, ${graph.edges.length} edges, ` +
        `${graph.back_edges.length} back edge(s)`,
    ),
  );
  container.appendChild(header);
  container.appendChild(renderLegend());

  const nodesById = new Map(graph.nodes.map((n) => [n.id, n]));
  const children = childMap(graph);
  const root = nodesById.get(graph.root);
  const tree = el("ul", "graph-root");
  if (root) {
    tree.appendChild(renderNode(root, graph, children, nodesById, collapsed, handlers));
  }
  container.appendChild(tree);
  return container;
}

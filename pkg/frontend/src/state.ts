import type { CallGraphJson } from "./types.js";

export const DEFAULT_MAX_DEPTH = 64;

// What the page is currently showing. A graph is only ever present for a
// selected entry.
export interface ViewState {
  keyword: string;
  selectedEntry: string | null;
  maxDepth: number;
  graph: CallGraphJson | null;
  collapsedNodes: Set<string>;
}

export function initialState(): ViewState {
  return {
    keyword: "",
    selectedEntry: null,
    maxDepth: DEFAULT_MAX_DEPTH,
    graph: null,
    collapsedNodes: new Set(),
  };
}

// At most one in-flight request per view; responses carrying a stale
// token are discarded instead of clobbering newer results.
export class RequestGate {
  private token = 0;

  next(): number {
    this.token += 1;
    return this.token;
  }

  isCurrent(token: number): boolean {
    return token === this.token;
  }
}

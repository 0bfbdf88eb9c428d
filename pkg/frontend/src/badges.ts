import type { LayerKind, StopReason } from "./types.js";

export interface BadgeSpec {
  label: string;
  className: string;
}

// One visually distinct badge per stop reason; the mapping is exhaustive
// and tested to stay that way.
export const STOP_BADGES: Record<StopReason, BadgeSpec> = {
  NoMatches: { label: "leaf", className: "badge-no-matches" },
  DataLayerReached: { label: "data layer", className: "badge-data-layer" },
  ThirdPartyLeaf: { label: "third party", className: "badge-third-party" },
  AnonymousLeaf: { label: "lambda", className: "badge-anonymous" },
  WebServiceProxyLeaf: { label: "service proxy", className: "badge-ws-proxy" },
  DepthCap: { label: "depth cap", className: "badge-depth-cap" },
  Unresolved: { label: "unresolved", className: "badge-unresolved" },
};

// Colorblind-safe palette; matches the DOT export so graphs read the same
// in the browser and in rendered Graphviz output.
export const LAYER_COLORS: Record<LayerKind, string> = {
  UI: "#4477aa",
  Business: "#228833",
  Data: "#ccbb44",
  WebService: "#66ccee",
  ThirdParty: "#aa3377",
  Unknown: "#bbbbbb",
};

export const LAYER_ORDER: readonly LayerKind[] = [
  "UI",
  "Business",
  "Data",
  "WebService",
  "ThirdParty",
  "Unknown",
];

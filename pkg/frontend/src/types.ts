// Wire types for the tiergraph JSON API. These mirror the documented
// schemas exactly; the UI renders nothing it did not receive.

export type LayerKind =
  | "UI"
  | "Business"
  | "Data"
  | "WebService"
  | "ThirdParty"
  | "Unknown";

export type StopReason =
  | "NoMatches"
  | "DataLayerReached"
  | "ThirdPartyLeaf"
  | "AnonymousLeaf"
  | "WebServiceProxyLeaf"
  | "DepthCap"
  | "Unresolved";

export const STOP_REASONS: readonly StopReason[] = [
  "NoMatches",
  "DataLayerReached",
  "ThirdPartyLeaf",
  "AnonymousLeaf",
  "WebServiceProxyLeaf",
  "DepthCap",
  "Unresolved",
];

export interface GraphNodeJson {
  id: string;
  name: string;
  kind: string;
  layer: LayerKind;
}

export interface GraphEdgeJson {
  from: string;
  to: string;
  kind: string;
}

export interface BackEdgeJson {
  from: string;
  to: string;
}

export interface CallGraphJson {
  root: string;
  nodes: GraphNodeJson[];
  edges: GraphEdgeJson[];
  back_edges: BackEdgeJson[];
  stop_reasons: Record<string, StopReason>;
}

export interface SearchHitJson {
  path: string;
  project: string;
  category: string;
  offsets: number[];
}

export interface SearchResultJson {
  keyword: string;
  code_hits: SearchHitJson[];
  noncode_hits: SearchHitJson[];
  entry_candidates: string[];
}

export interface ApiErrorJson {
  status: number;
  code: string;
  message: string;
}

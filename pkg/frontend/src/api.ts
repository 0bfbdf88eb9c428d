import type { CallGraphJson, SearchResultJson } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string) => Promise<Response>;

async function getJson<T>(url: string, fetchFn: FetchLike): Promise<T> {
  const response = await fetchFn(url);
  const body = await response.text();
  if (!response.ok) {
    try {
      const doc = JSON.parse(body);
      throw new ApiError(doc.status, doc.code, doc.message);
    } catch (err) {
      if (err instanceof ApiError) throw err;
      throw new ApiError(response.status, "bad_response", body.slice(0, 200));
    }
  }
  return JSON.parse(body) as T;
}

export function searchCode(
  keyword: string,
  fetchFn: FetchLike = fetch,
): Promise<SearchResultJson> {
  return getJson(`/api/search?q=${encodeURIComponent(keyword)}`, fetchFn);
}

export function fetchGraph(
  entry: string,
  maxDepth: number,
  fetchFn: FetchLike = fetch,
): Promise<CallGraphJson> {
  const params = new URLSearchParams({ entry, max_depth: String(maxDepth) });
  return getJson(`/api/graph?${params.toString()}`, fetchFn);
}

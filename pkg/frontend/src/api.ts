/** Typed client for the exploration service's JSON API.
 *
 * Every method resolves with parsed JSON or rejects with an ApiError
 * carrying the status code and whatever explanation the server gave,
 * including the offending attribute list of a rejected counterexample
 * and the current revision of a stale-write conflict.
 */

export interface Query {
  premise: string[];
  conclusion: string[];
  shared_intent: string[];
  candidates: string[];
}

export interface Progress {
  queries_answered: number;
  accepts: number;
  counterexamples: number;
  scale_attributes: number;
  reflected_extents: number;
  base_extents: number;
}

export interface HistoryEntry {
  premise: string[];
  conclusion: string[];
  shared_intent: string[];
  candidates: string[];
  accept?: boolean;
  counterexample?: string[];
  new_extent?: string[];
}

export interface SessionResource {
  id: string;
  name: string;
  revision: number;
  done: boolean;
  truncated: boolean;
  query: Query | null;
  progress: Progress;
  objects: string[];
  attributes: string[];
  scale_attribute_extents: string[][];
  history: HistoryEntry[];
}

export interface LatticeNode {
  id: number;
  extent: string[];
  intent: string[];
  objects: string[];
  attributes: string[];
}

export interface LatticeDoc {
  name: string;
  nodes: LatticeNode[];
  edges: [number, number][];
}

export interface CreateSessionPayload {
  name?: string;
  context_text?: string;
  context?: unknown;
  order?: string[];
  init_base?: boolean;
  max_queries?: number;
  max_scale_attributes?: number;
}

export type AnswerBody =
  | { accept: true }
  | { counterexample: string[] };

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly offending: string[];
  readonly currentRevision: number | null;

  constructor(
    status: number,
    message: string,
    offending: string[] = [],
    currentRevision: number | null = null,
  ) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.offending = offending;
    this.currentRevision = currentRevision;
  }
}

interface ParsedDetail {
  message: string;
  offending: string[];
  currentRevision: number | null;
}

/** Flatten the service's error payloads into one message. */
export function describeDetail(detail: unknown): ParsedDetail {
  if (typeof detail === "string") {
    return { message: detail, offending: [], currentRevision: null };
  }
  if (Array.isArray(detail)) {
    const parts = detail.map((item) =>
      item && typeof item === "object" && "msg" in item
        ? String((item as { msg: unknown }).msg)
        : JSON.stringify(item),
    );
    return { message: parts.join("; "), offending: [], currentRevision: null };
  }
  if (detail && typeof detail === "object") {
    const rec = detail as Record<string, unknown>;
    const message =
      typeof rec.message === "string" ? rec.message : JSON.stringify(detail);
    const offending = Array.isArray(rec.offending)
      ? rec.offending.map(String)
      : [];
    const currentRevision =
      typeof rec.current_revision === "number" ? rec.current_revision : null;
    return { message, offending, currentRevision };
  }
  return { message: "request failed", offending: [], currentRevision: null };
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = "", fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, err instanceof Error ? err.message : String(err));
    }
    if (!response.ok) {
      let detail: unknown = null;
      try {
        detail = (await response.json() as { detail?: unknown }).detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      const parsed = describeDetail(detail ?? response.statusText);
      throw new ApiError(
        response.status,
        parsed.message,
        parsed.offending,
        parsed.currentRevision,
      );
    }
    return response.json() as Promise<T>;
  }

  health(): Promise<{ status: string; version: string; sessions: number }> {
    return this.request("/api/v1/health");
  }

  createSession(payload: CreateSessionPayload): Promise<SessionResource> {
    return this.request("/api/v1/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  getSession(id: string): Promise<SessionResource> {
    return this.request(`/api/v1/sessions/${id}`);
  }

  answer(
    id: string,
    revision: number,
    body: AnswerBody,
  ): Promise<SessionResource> {
    return this.request(`/api/v1/sessions/${id}/answer`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ revision, ...body }),
    });
  }

  lattice(id: string): Promise<LatticeDoc> {
    return this.request(`/api/v1/sessions/${id}/lattice`);
  }
}

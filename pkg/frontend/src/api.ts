/** Typed fetch client for the workbench JSON API. */

import type {
  AlignmentView,
  Candidate,
  Decision,
  DecisionResult,
  EvalRequest,
  EvalResult,
  MoveListing,
  NeighborListing,
  OntologyListing,
  RuleVerdict,
  SessionInfo,
  SessionRequest,
  Validity,
} from "./types.js";

export class ApiRequestError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ApiRequestError";
    this.status = status;
    this.code = code;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = "", fetchImpl: FetchLike = (...args) => fetch(...args)) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl;
  }

  url(path: string, params?: Record<string, string>): string {
    const query = params ? `?${new URLSearchParams(params)}` : "";
    return `${this.baseUrl}/v1${path}${query}`;
  }

  private async request<T>(path: string, init?: RequestInit, params?: Record<string, string>): Promise<T> {
    const response = await this.fetchImpl(this.url(path, params), init);
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const code = body && typeof body.code === "string" ? body.code : "unknown-error";
      const message =
        body && typeof body.message === "string" ? body.message : `request failed (${response.status})`;
      throw new ApiRequestError(response.status, code, message);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  ontologyClasses(): Promise<OntologyListing> {
    return this.request("/ontology/classes");
  }

  neighbors(term: string, direction: "up" | "down"): Promise<NeighborListing> {
    return this.request("/ontology/neighbors", undefined, { term, direction });
  }

  createSession(req: SessionRequest): Promise<SessionInfo> {
    return this.post("/session", req);
  }

  candidates(sessionId: string): Promise<{ candidates: Candidate[] }> {
    return this.request(`/session/${sessionId}/candidates`);
  }

  validity(sessionId: string, candidateId: number): Promise<Validity> {
    return this.request(`/session/${sessionId}/candidate/${candidateId}/validity`);
  }

  moves(sessionId: string, candidateId: number, phase: "relax" | "strengthen"): Promise<MoveListing> {
    return this.request(`/session/${sessionId}/candidate/${candidateId}/moves`, undefined, { phase });
  }

  decide(sessionId: string, decision: Decision): Promise<DecisionResult> {
    return this.post(`/session/${sessionId}/decide`, decision);
  }

  alignment(sessionId: string): Promise<AlignmentView> {
    return this.request(`/session/${sessionId}/alignment`);
  }

  evalTerm(req: EvalRequest): Promise<EvalResult> {
    return this.post("/eval", req);
  }

  rulesCheck(req: { rulesPath?: string; rulesText?: string; scenarios: string[] }): Promise<{ results: RuleVerdict[] }> {
    return this.post("/rules/check", req);
  }
}

/** Thin typed client for the scoring service HTTP API.
 *
 * The interface never computes any of the decision math locally; every
 * consistency index and score shown in the UI comes from these endpoints.
 */

import type {
  CellUpdateResponse,
  HierarchyDoc,
  ResultsDoc,
  SessionDoc,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let message = response.statusText || `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (typeof body?.detail === "string") message = body.detail;
    else if (typeof body?.detail?.message === "string") message = body.detail.message;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, message);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      ...init,
      headers: { "content-type": "application/json", ...(init?.headers ?? {}) },
    });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  createSession(
    hierarchy: HierarchyDoc,
    experts: string[],
    autoReciprocal = true,
  ): Promise<{ session_id: string; version: number }> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify({ hierarchy, experts, auto_reciprocal: autoReciprocal }),
    });
  }

  getSession(sessionId: string): Promise<SessionDoc> {
    return this.request(`/sessions/${sessionId}`);
  }

  putCell(
    sessionId: string,
    expertId: string,
    matrixId: string,
    i: number,
    j: number,
    value: number | string,
  ): Promise<CellUpdateResponse> {
    return this.request(
      `/sessions/${sessionId}/experts/${expertId}/matrices/${matrixId}/cells`,
      { method: "PUT", body: JSON.stringify({ i, j, value }) },
    );
  }

  finalize(sessionId: string, measurementsCsv: string, seed = 0): Promise<ResultsDoc> {
    return this.request(`/sessions/${sessionId}/finalize`, {
      method: "POST",
      body: JSON.stringify({ measurements_csv: measurementsCsv, seed }),
    });
  }

  getResults(sessionId: string): Promise<ResultsDoc> {
    return this.request(`/sessions/${sessionId}/results`);
  }
}

import type { FetchLike } from "../src/api.js";
import type { CellUpdateResponse, ConsistencyPayload, SessionDoc } from "../src/types.js";

export function consistencyPayload(overrides: Partial<ConsistencyPayload> = {}): ConsistencyPayload {
  return {
    lambda_max: 3.0092,
    ci: 0.0046,
    ri: 0.509,
    cr: 0.009,
    gci: 0.0071,
    cr_accepted: true,
    alonso_lamata_accepted: true,
    ...overrides,
  };
}

export function ones(n: number): number[][] {
  return Array.from({ length: n }, () => Array.from({ length: n }, () => 1));
}

export function sessionDoc(): SessionDoc {
  return {
    schema: "ahp-spec/1",
    kind: "session",
    session_id: "s1",
    status: "draft",
    auto_reciprocal: true,
    version: 0,
    experts: ["e1"],
    hierarchy: {
      schema: "ahp-spec/1",
      kind: "hierarchy",
      criteria: [
        {
          id: "IB",
          name: "Internal Business",
          indicators: [
            { id: "ib1", name: "ib one", direction: "benefit", numerator: "", denominator: "" },
            { id: "ib2", name: "ib two", direction: "cost", numerator: "", denominator: "" },
            { id: "ib3", name: "ib three", direction: "benefit", numerator: "", denominator: "" },
          ],
        },
        {
          id: "IL",
          name: "Innovation & Learning",
          indicators: [
            { id: "il1", name: "il one", direction: "benefit", numerator: "", denominator: "" },
            { id: "il2", name: "il two", direction: "benefit", numerator: "", denominator: "" },
          ],
        },
        {
          id: "F",
          name: "Financial",
          indicators: [
            { id: "f1", name: "f one", direction: "cost", numerator: "", denominator: "" },
            { id: "f2", name: "f two", direction: "benefit", numerator: "", denominator: "" },
          ],
        },
        {
          id: "NA",
          name: "Network Alliances",
          indicators: [
            { id: "na1", name: "na one", direction: "benefit", numerator: "", denominator: "" },
            { id: "na2", name: "na two", direction: "benefit", numerator: "", denominator: "" },
          ],
        },
      ],
    },
    matrices: {
      e1: { criteria: ones(4), IB: ones(3), IL: ones(2), F: ones(2), NA: ones(2) },
    },
  };
}

export interface RecordedRequest {
  url: string;
  method: string;
  body: unknown;
}

/** Scripted fetch: pops one response per call and records every request. */
export function scriptedFetch(
  responses: Array<{ status?: number; body: unknown }>,
): { fetch: FetchLike; requests: RecordedRequest[] } {
  const requests: RecordedRequest[] = [];
  const queue = [...responses];
  const fetchImpl: FetchLike = async (url, init) => {
    requests.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    const next = queue.shift();
    if (!next) throw new Error(`unexpected request to ${url}`);
    const status = next.status ?? 200;
    return new Response(JSON.stringify(next.body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetch: fetchImpl, requests };
}

export function cellUpdate(
  matrix: number[][],
  version: number,
  consistency: ConsistencyPayload,
): CellUpdateResponse {
  return { version, matrix, consistency };
}

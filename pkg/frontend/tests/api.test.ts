import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { scriptedFetch, sessionDoc } from "./helpers.js";

describe("api client", () => {
  it("creates sessions with the hierarchy and expert list", async () => {
    const { fetch, requests } = scriptedFetch([
      { status: 201, body: { session_id: "s1", version: 0 } },
    ]);
    const client = new ApiClient("http://svc", fetch);
    const doc = sessionDoc();
    const created = await client.createSession(doc.hierarchy, ["e1", "e2"], false);
    expect(created.session_id).toBe("s1");
    expect(requests[0]!.method).toBe("POST");
    expect(requests[0]!.body).toEqual({
      hierarchy: doc.hierarchy,
      experts: ["e1", "e2"],
      auto_reciprocal: false,
    });
  });

  it("sends fraction strings through untouched so the service parses them exactly", async () => {
    const { fetch, requests } = scriptedFetch([
      { body: { version: 1, matrix: [[1]], consistency: {} } },
    ]);
    await new ApiClient("http://svc", fetch).putCell("s1", "e1", "criteria", 0, 1, "1/7");
    expect(requests[0]!.body).toEqual({ i: 0, j: 1, value: "1/7" });
  });

  it("turns service error payloads into typed errors with the detail message", async () => {
    const { fetch } = scriptedFetch([
      { status: 409, body: { detail: "session already finalized" } },
    ]);
    const client = new ApiClient("http://svc", fetch);
    const err = await client.finalize("s1", "project_id,a\np1,1\n").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.message).toBe("session already finalized");
  });

  it("unwraps nested validation details", async () => {
    const { fetch } = scriptedFetch([
      { status: 400, body: { detail: { message: "invalid hierarchy document", diagnostics: [] } } },
    ]);
    const err = await new ApiClient("http://svc", fetch)
      .getSession("s1")
      .catch((e) => e);
    expect(err.message).toBe("invalid hierarchy document");
  });
});

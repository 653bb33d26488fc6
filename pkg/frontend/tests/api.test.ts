import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("posts turns with the documented body shape", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse({
        assistant_words: [],
        candidates: [],
        forced: false,
        truncated: false,
        seconds: 0.1,
      }),
    );
    vi.stubGlobal("fetch", fetchMock);

    const api = new ApiClient("http://host");
    await api.sendTurn("abc", {
      text: "find a red cat",
      image_ids: [7],
      force_retrieval: true,
    });

    expect(fetchMock).toHaveBeenCalledOnce();
    const [url, init] = fetchMock.mock.calls[0];
    expect(url).toBe("http://host/sessions/abc/turns");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body)).toEqual({
      text: "find a red cat",
      image_ids: [7],
      force_retrieval: true,
    });
  });

  it("routes every endpoint to its path", async () => {
    const fetchMock = vi
      .fn()
      .mockImplementation(() => Promise.resolve(jsonResponse({})));
    vi.stubGlobal("fetch", fetchMock);
    const api = new ApiClient("");

    await api.createSession();
    await api.getSession("s1");
    await api.selectCandidate("s1", 42);
    await api.dismissCandidates("s1");
    await api.getTranscript("s1");
    await api.imageInfo(42);
    await api.health();

    const urls = fetchMock.mock.calls.map((c) => c[0]);
    expect(urls).toEqual([
      "/sessions",
      "/sessions/s1",
      "/sessions/s1/select",
      "/sessions/s1/dismiss",
      "/sessions/s1/transcript",
      "/gallery/42",
      "/health",
    ]);
    expect(fetchMock.mock.calls[2][1].body).toBe('{"image_id":42}');
  });

  it("maps structured error bodies to ApiError with the server code", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(
        jsonResponse(
          { error: { code: "candidates_pending", message: "select first" } },
          409,
        ),
      ),
    );
    const api = new ApiClient("");
    const err = await api.sendTurn("s1", { text: "hi" }).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe("candidates_pending");
    expect(err.status).toBe(409);
    expect(err.message).toBe("select first");
  });

  it("maps body-validation failures and opaque errors", async () => {
    const fetchMock = vi
      .fn()
      .mockResolvedValueOnce(jsonResponse({ detail: [{ loc: ["text"] }] }, 422))
      .mockResolvedValueOnce(new Response("boom", { status: 500 }));
    vi.stubGlobal("fetch", fetchMock);
    const api = new ApiClient("");

    const validation = await api.getSession("x").catch((e) => e);
    expect(validation.code).toBe("validation_error");

    const opaque = await api.getSession("x").catch((e) => e);
    expect(opaque.code).toBe("http_error");
    expect(opaque.status).toBe(500);
  });
});

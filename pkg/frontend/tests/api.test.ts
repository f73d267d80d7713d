import { afterEach, describe, expect, it, vi } from "vitest";
import { ApiClient, ApiError } from "../src/api.js";
import { installFetch, json, receiptStub } from "./helpers.js";

const BASE = "http://node.test";
const ADDRESS = "0x7E5F4552091A69125d5DfCb7b8C2659029395Bdf";

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("request wiring", () => {
  it("posts login credentials to the documented path", async () => {
    const calls = installFetch({
      "POST /auth/login": json(200, {
        token: "tok", address: ADDRESS, expires_at: 9_999_999_999,
      }),
    });
    const api = new ApiClient(BASE);
    const session = await api.login("dvre-login:00ff", "0x" + "11".repeat(65), ADDRESS);
    expect(session.token).toBe("tok");
    expect(calls[0].url).toBe(`${BASE}/auth/login`);
    expect(JSON.parse(calls[0].body as string)).toEqual({
      signed_message: "dvre-login:00ff",
      signature: "0x" + "11".repeat(65),
      address: ADDRESS,
    });
  });

  it("sends the bearer token once one is set", async () => {
    const calls = installFetch({ "GET /groups": json(200, []) });
    const api = new ApiClient(BASE);
    api.setToken("tok-77");
    await api.listGroups();
    expect(calls[0].headers["Authorization"]).toBe("Bearer tok-77");
  });

  it("posts member grants as a bare array with date strings intact", async () => {
    const calls = installFetch({
      "POST /groups/0xg1/members": json(200, {
        members: [], receipt: receiptStub(260_000),
      }),
    });
    const api = new ApiClient(BASE);
    await api.addMembers("0xg1", [
      { eoa_address: ADDRESS, access_from: "2024-03-27", access_to: "2024-03-29" },
    ]);
    const body = JSON.parse(calls[0].body as string);
    expect(Array.isArray(body)).toBe(true);
    expect(body).toEqual([
      { eoa_address: ADDRESS, access_from: "2024-03-27", access_to: "2024-03-29" },
    ]);
  });

  it("uploads assets as multipart form data without forcing a content type", async () => {
    const calls = installFetch({
      "POST /assets": json(201, {
        cid: "dvre1-ff", file_name: "seed.bin", size: 3,
        receipt: receiptStub(260_000),
      }),
    });
    const api = new ApiClient(BASE);
    api.setToken("tok");
    const out = await api.uploadAsset("0xg1", "seed.bin", new Blob([new Uint8Array(3)]));
    expect(out.cid).toBe("dvre1-ff");
    const form = calls[0].body as FormData;
    expect(form).toBeInstanceOf(FormData);
    expect(form.get("group_id")).toBe("0xg1");
    // the browser must pick the multipart boundary itself
    expect(calls[0].headers["Content-Type"]).toBeUndefined();
    expect(calls[0].headers["Authorization"]).toBe("Bearer tok");
  });

  it("url-encodes the signed download challenge and decodes the file name", async () => {
    const payload = new Uint8Array([1, 2, 3]);
    const calls = installFetch({
      "GET /assets/dvre1-aa": () => new Response(payload, {
        status: 200,
        headers: { "X-File-Name": "mask%20v1.png" },
      }),
    });
    const api = new ApiClient(BASE);
    const challenge = "dvre-decrypt:00ff:1122334455667788";
    const saved = await api.downloadAsset("dvre1-aa", challenge, "0xsig");
    expect(saved.fileName).toBe("mask v1.png");
    expect(new Uint8Array(await saved.content.arrayBuffer())).toEqual(payload);
    expect(calls[0].headers["X-Signed-Message"]).toBe(encodeURIComponent(challenge));
    expect(calls[0].headers["X-Signed-Message"]).toContain("dvre-decrypt%3A");
    expect(calls[0].headers["X-Signature"]).toBe("0xsig");
  });
});

describe("error surfacing", () => {
  it("raises ApiError carrying the server's reason string", async () => {
    installFetch({
      "GET /users/0xnobody": json(404, { detail: "no such user" }),
    });
    const api = new ApiClient(BASE);
    const failure = await api.getUser("0xnobody").catch((err) => err);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(404);
    expect(failure.detail).toBe("no such user");
  });

  it("keeps a generic message when the error body is not json", async () => {
    installFetch({
      "GET /groups": () => new Response("gateway unhappy", { status: 502 }),
    });
    const api = new ApiClient(BASE);
    const failure = await api.listGroups().catch((err) => err);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(502);
    expect(failure.detail).toMatch(/502/);
  });

  it("maps oversize uploads to a 413 error", async () => {
    installFetch({
      "POST /assets": json(413, { detail: "upload exceeds the configured cap" }),
    });
    const api = new ApiClient(BASE);
    const failure = await api
      .uploadAsset("0xg1", "big.bin", new Blob([new Uint8Array(64)]))
      .catch((err) => err);
    expect(failure.status).toBe(413);
    expect(failure.detail).toMatch(/cap/);
  });
});

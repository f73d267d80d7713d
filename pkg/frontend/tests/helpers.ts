// Shared scaffolding: a recording fetch stub and canned store states.

import { vi } from "vitest";
import { Session } from "../src/api.js";
import { Store, initialState } from "../src/state.js";

export interface RecordedCall {
  method: string;
  url: string;
  headers: Record<string, string>;
  body: BodyInit | null;
}

export type RouteHandler = (call: RecordedCall) => Response;

/**
 * Replace global fetch with a stub that records every call and answers
 * from `routes`, keyed as "METHOD path". An unrouted request fails the
 * test loudly instead of hanging.
 */
export function installFetch(routes: Record<string, RouteHandler>): RecordedCall[] {
  const calls: RecordedCall[] = [];
  vi.stubGlobal("fetch", async (input: RequestInfo | URL, init: RequestInit = {}) => {
    const url = String(input);
    const call: RecordedCall = {
      method: init.method ?? "GET",
      url,
      headers: { ...((init.headers ?? {}) as Record<string, string>) },
      body: (init.body as BodyInit | undefined) ?? null,
    };
    calls.push(call);
    const path = url.replace(/^https?:\/\/[^/]+/, "").split("?")[0];
    const handler = routes[`${call.method} ${path}`];
    if (!handler) throw new Error(`unrouted request: ${call.method} ${path}`);
    return handler(call);
  });
  return calls;
}

export function jsonBody(status: number, body: unknown,
                         headers: Record<string, string> = {}): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json", ...headers },
  });
}

export function json(status: number, body: unknown,
                     headers: Record<string, string> = {}): RouteHandler {
  return () => jsonBody(status, body, headers);
}

export function receiptStub(gasUsed: number) {
  return {
    tx_hash: "0x" + "ab".repeat(32),
    status: "ok",
    gas_used: gasUsed,
    events: [{ contract: "0x" + "cd".repeat(20), name: "Success",
               message: "User access updated" }],
    block_height: 7,
    block_time: 1_711_411_200,
  };
}

export function liveSession(address: string): Session {
  return { token: "tok-1", address, expires_at: Math.floor(Date.now() / 1000) + 3600 };
}

/** A store already signed in as `address`, clock left at real time. */
export function signedInStore(address: string): Store {
  const store = new Store(initialState());
  store.update({
    session: liveSession(address),
    profile: { public_address: address, username: "alice",
               organization: "UvA", country: "NL" },
  });
  return store;
}

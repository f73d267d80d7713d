import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { ApiClient } from "../src/api.js";
import { mountApp } from "../src/app.js";
import { Store } from "../src/state.js";
import { installFetch } from "./helpers.js";

let root: HTMLElement;

beforeEach(() => {
  root = document.createElement("div");
  document.body.append(root);
  installFetch({});
});

afterEach(() => {
  root.remove();
  vi.unstubAllGlobals();
});

describe("app shell", () => {
  it("mounts four tabs and starts on the auth page", () => {
    mountApp(root, new Store(), new ApiClient("http://node.test"));
    const tabs = Array.from(root.querySelectorAll(".tab"));
    expect(tabs.map((tab) => tab.textContent)).toEqual([
      "Auth", "Make agreements", "Membership", "Asset manager",
    ]);
    expect(root.querySelector(".tab.active")?.getAttribute("data-page")).toBe("auth");
    expect(root.textContent).toContain("Connect a wallet");
  });

  it("switches pages when a tab is clicked", () => {
    mountApp(root, new Store(), new ApiClient("http://node.test"));
    (root.querySelector("[data-page=membership]") as HTMLElement).click();
    expect(root.querySelector(".tab.active")?.getAttribute("data-page"))
      .toBe("membership");
    expect(root.textContent).toContain("Membership");
  });

  it("falls back to auth for unknown page names", () => {
    const app = mountApp(root, new Store(), new ApiClient("http://node.test"));
    app.navigate("no-such-page");
    expect(root.querySelector(".tab.active")?.getAttribute("data-page")).toBe("auth");
  });

  it("reflects the signed-in address in the masthead", () => {
    const store = new Store();
    mountApp(root, store, new ApiClient("http://node.test"));
    const who = root.querySelector(".whoami")!;
    expect(who.textContent).toBe("not connected");
    store.update({
      session: { token: "t", address: "0xABCD", expires_at: 9_999_999_999 },
    });
    expect(who.textContent).toBe("0xABCD");
  });
});

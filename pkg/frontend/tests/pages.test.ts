// Page behavior against a stubbed server: routing of fresh wallets into
// registration, client-side input gates, and server reason strings
// surfacing as banners. All real authorization lives on the server; these
// tests only pin down what the UI shows for each response.

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { ApiClient } from "../src/api.js";
import { Store, initialState } from "../src/state.js";
import { renderAuthPage } from "../src/pages/auth.js";
import { renderAgreementsPage } from "../src/pages/agreements.js";
import { renderMembershipPage } from "../src/pages/membership.js";
import { decryptChallenge, renderAssetsPage } from "../src/pages/assets.js";
import { walletFromPrivateKey } from "../src/wallet.js";
import {
  RouteHandler,
  installFetch,
  json,
  jsonBody,
  receiptStub,
  signedInStore,
} from "./helpers.js";

const BASE = "http://node.test";
const KEY_ONE = "0x" + "1".padStart(64, "0");
const ADDRESS = "0x7E5F4552091A69125d5DfCb7b8C2659029395Bdf";

let root: HTMLElement;
let visited: string[];

beforeEach(() => {
  root = document.createElement("div");
  document.body.append(root);
  visited = [];
});

afterEach(() => {
  root.remove();
  vi.unstubAllGlobals();
});

function context(store: Store, api: ApiClient) {
  return { store, api, navigate: (page: string) => visited.push(page) };
}

function field(name: string): HTMLInputElement {
  const node = root.querySelector(`[data-field="${name}"]`);
  expect(node, `missing field ${name}`).toBeTruthy();
  return node as HTMLInputElement;
}

function press(action: string): void {
  const node = root.querySelector(`[data-action="${action}"]`);
  expect(node, `missing action ${action}`).toBeTruthy();
  (node as HTMLElement).click();
}

function bannerText(): string {
  return Array.from(root.querySelectorAll(".banner"))
    .map((node) => node.textContent)
    .join(" | ");
}

describe("auth page", () => {
  it("rejects a malformed key without talking to the server", async () => {
    installFetch({});
    const store = new Store();
    renderAuthPage(root, context(store, new ApiClient(BASE)));
    field("private-key").value = "0xzz";
    press("connect");
    await vi.waitFor(() => expect(bannerText()).toMatch(/Key rejected/));
  });

  it("shows the server reason when login is refused", async () => {
    installFetch({
      "POST /auth/challenge": json(200, { challenge: "dvre-login:00ff" }),
      "POST /auth/login": json(401, { detail: "bad_signature" }),
    });
    const store = new Store();
    renderAuthPage(root, context(store, new ApiClient(BASE)));
    field("private-key").value = KEY_ONE;
    press("connect");
    await vi.waitFor(
      () => expect(bannerText()).toMatch(/Login failed: bad_signature/),
      { timeout: 3000 });
  });

  it("routes a fresh wallet into registration, then to the dashboard", async () => {
    let lookups = 0;
    const userRoute: RouteHandler = () => {
      lookups += 1;
      return lookups === 1
        ? jsonBody(404, { detail: "user not found" })
        : jsonBody(200, { public_address: ADDRESS, username: "alice",
                          organization: "UvA", country: "NL" });
    };
    installFetch({
      "POST /auth/challenge": json(200, { challenge: "dvre-login:00ff" }),
      "POST /auth/login": json(200, {
        token: "tok", address: ADDRESS, expires_at: 9_999_999_999,
      }),
      [`GET /users/${ADDRESS}`]: userRoute,
      "POST /users": json(201, {
        user_contract: "0x" + "11".repeat(20),
        receipt: receiptStub(1_535_460),
      }),
    });
    const store = new Store();
    const api = new ApiClient(BASE);
    renderAuthPage(root, context(store, api));

    field("private-key").value = KEY_ONE;
    press("connect");
    await vi.waitFor(() => field("username"), { timeout: 3000 });
    expect(store.state.session?.address).toBe(ADDRESS);

    field("username").value = "alice";
    field("organization").value = "UvA";
    field("country").value = "NL";
    press("register");
    await vi.waitFor(() => expect(visited).toContain("agreements"));
    expect(store.state.profile?.username).toBe("alice");
  });

  it("goes straight to the dashboard for a registered wallet", async () => {
    installFetch({
      "POST /auth/challenge": json(200, { challenge: "dvre-login:00ff" }),
      "POST /auth/login": json(200, {
        token: "tok", address: ADDRESS, expires_at: 9_999_999_999,
      }),
      [`GET /users/${ADDRESS}`]: json(200, {
        public_address: ADDRESS, username: "alice",
        organization: "UvA", country: "NL",
      }),
    });
    const store = new Store();
    renderAuthPage(root, context(store, new ApiClient(BASE)));
    field("private-key").value = KEY_ONE;
    press("connect");
    await vi.waitFor(() => expect(visited).toContain("agreements"), { timeout: 3000 });
  });

  it("blocks registration with an empty username", async () => {
    installFetch({});
    const store = new Store();
    store.update({ session: { token: "t", address: ADDRESS, expires_at: 9_999_999_999 } });
    const { renderRegistrationForm } = await import("../src/pages/auth.js");
    renderRegistrationForm(root, context(store, new ApiClient(BASE)));
    press("register");
    await vi.waitFor(() => expect(bannerText()).toMatch(/Username is required/));
  });
});

describe("make agreements page", () => {
  it("asks for a session before showing the form", () => {
    installFetch({});
    renderAgreementsPage(root, context(new Store(), new ApiClient(BASE)));
    expect(bannerText()).toMatch(/Connect a wallet first/);
    expect(root.querySelector("[data-action=save-policies]")).toBeNull();
  });

  it("refuses an empty group name client-side", async () => {
    const calls = installFetch({});
    renderAgreementsPage(root, context(signedInStore(ADDRESS), new ApiClient(BASE)));
    press("save-policies");
    await vi.waitFor(() => expect(bannerText()).toMatch(/Group name must not be empty/));
    expect(calls).toHaveLength(0);
  });

  it("creates the group, pins the first file, and reports gas", async () => {
    const group = {
      group_id: "0xg9", group_name: "DataSharing",
      group_owner_address: ADDRESS, permissions: "read",
      organizations: ["UvA", "UiS"], countries: ["NL", "NO"],
    };
    const calls = installFetch({
      "POST /groups": json(201, { group_id: "0xg9", receipt: receiptStub(1_832_050) }),
      "POST /assets": json(201, {
        cid: "dvre1-77", file_name: "seed.bin", size: 100,
        receipt: receiptStub(260_000),
      }),
      "GET /groups": json(200, [group]),
    });
    const store = signedInStore(ADDRESS);
    renderAgreementsPage(root, context(store, new ApiClient(BASE)));

    field("group-name").value = "DataSharing";
    field("organizations").value = "UvA, UiS";
    field("countries").value = "NL, NO";
    Object.defineProperty(field("first-file"), "files", {
      value: [new File([new Uint8Array(100)], "seed.bin")],
    });
    press("save-policies");

    await vi.waitFor(() => expect(bannerText()).toMatch(/pinned as dvre1-77/));
    expect(bannerText()).toMatch(/Group 0xg9 created/);
    expect(bannerText()).toMatch(/gas/);
    expect(store.state.selectedGroup).toBe("0xg9");
    expect(store.state.pendingPolicyForm.group_name).toBe("");

    const draft = JSON.parse(calls[0].body as string);
    expect(draft).toEqual({
      group_name: "DataSharing", permissions: "read",
      organizations: ["UvA", "UiS"], countries: ["NL", "NO"],
    });
  });

  it("surfaces the server's refusal verbatim", async () => {
    installFetch({
      "POST /groups": json(403, { detail: "forbidden for this wallet" }),
    });
    renderAgreementsPage(root, context(signedInStore(ADDRESS), new ApiClient(BASE)));
    field("group-name").value = "DataSharing";
    press("save-policies");
    await vi.waitFor(
      () => expect(bannerText()).toMatch(/Save failed: forbidden for this wallet/));
  });
});

describe("membership page", () => {
  function storeWithGroup(): Store {
    const store = signedInStore(ADDRESS);
    store.update({
      groups: [{
        group_id: "0xg1", group_name: "DataSharing",
        group_owner_address: ADDRESS, permissions: "read",
        organizations: ["UvA"], countries: ["NL"],
      }],
      selectedGroup: "0xg1",
    });
    return store;
  }

  it("asks for a session first", () => {
    installFetch({});
    renderMembershipPage(root, context(new Store(), new ApiClient(BASE)));
    expect(bannerText()).toMatch(/Connect a wallet first/);
  });

  it("offers day-granular date pickers", () => {
    installFetch({});
    renderMembershipPage(root, context(storeWithGroup(), new ApiClient(BASE)));
    expect(field("access-from").getAttribute("type")).toBe("date");
    expect(field("access-to").getAttribute("type")).toBe("date");
  });

  it("sends picked dates verbatim and shows the resolved window", async () => {
    const member = {
      eoa_address: "0x" + "22".repeat(20),
      access_from: 1_711_497_600, access_to: 1_711_756_799,
    };
    const calls = installFetch({
      "POST /groups/0xg1/members": json(200, {
        members: [member], receipt: receiptStub(260_000),
      }),
    });
    renderMembershipPage(root, context(storeWithGroup(), new ApiClient(BASE)));

    field("member-address").value = member.eoa_address;
    field("access-from").value = "2024-03-27";
    field("access-to").value = "2024-03-29";
    press("add-member");

    await vi.waitFor(() => expect(bannerText()).toMatch(/access updated/));
    expect(JSON.parse(calls[0].body as string)).toEqual([{
      eoa_address: member.eoa_address,
      access_from: "2024-03-27",
      access_to: "2024-03-29",
    }]);
    const row = root.querySelector(".member-row");
    expect(row?.textContent).toContain(member.eoa_address);
    expect(row?.textContent).toContain("2024-03-27");
  });

  it("requires address and both dates before submitting", async () => {
    const calls = installFetch({});
    renderMembershipPage(root, context(storeWithGroup(), new ApiClient(BASE)));
    press("add-member");
    await vi.waitFor(
      () => expect(bannerText()).toMatch(/Address and both dates are required/));
    expect(calls).toHaveLength(0);
  });

  it("shows the owner-only revert reason from the server", async () => {
    installFetch({
      "POST /groups/0xg1/members": json(403, {
        detail: "Only group owner can call this function",
      }),
    });
    renderMembershipPage(root, context(storeWithGroup(), new ApiClient(BASE)));
    field("member-address").value = "0x" + "22".repeat(20);
    field("access-from").value = "2024-03-27";
    field("access-to").value = "2024-03-29";
    press("add-member");
    await vi.waitFor(() => expect(bannerText())
      .toMatch(/Grant failed: Only group owner can call this function/));
  });
});

describe("asset manager page", () => {
  const KEY_ID = "aa".repeat(16);
  const FILE_ROW = {
    ipfs_hash: "dvre1-aa", file_name: "mask.png",
    added_by: ADDRESS, added_at: 1_711_627_200,
  };
  const META = {
    cid: "dvre1-aa", version: 1, file_name: "mask.png", content_length: 16_384,
    acc: "group-member:0xg1", chain: "dvre-local", key_id: KEY_ID,
    n: 5, t: 3, owner: ADDRESS, created_at: 1_711_627_200,
  };

  function storeWithWallet(): Store {
    const store = signedInStore(ADDRESS);
    store.update({
      wallet: walletFromPrivateKey(KEY_ONE),
      groups: [{
        group_id: "0xg1", group_name: "DataSharing",
        group_owner_address: ADDRESS, permissions: "read",
        organizations: ["UvA"], countries: ["NL"],
      }],
      selectedGroup: "0xg1",
    });
    return store;
  }

  it("builds decrypt challenges around the key id with a fresh nonce", () => {
    const first = decryptChallenge(KEY_ID);
    const second = decryptChallenge(KEY_ID);
    expect(first).toMatch(new RegExp(`^dvre-decrypt:${KEY_ID}:[0-9a-f]{16}$`));
    expect(second).not.toBe(first);
  });

  it("asks for a session first", () => {
    installFetch({});
    renderAssetsPage(root, context(new Store(), new ApiClient(BASE)));
    expect(bannerText()).toMatch(/Connect a wallet first/);
  });

  it("lists the group's files with view and download actions", async () => {
    installFetch({ "GET /groups/0xg1/files": json(200, [FILE_ROW]) });
    renderAssetsPage(root, context(storeWithWallet(), new ApiClient(BASE)));
    await vi.waitFor(() => expect(root.querySelector(".file-row")).toBeTruthy());
    const row = root.querySelector(".file-row")!;
    expect(row.textContent).toContain("mask.png");
    expect(row.querySelector("[data-action=view]")).toBeTruthy();
    expect(row.querySelector("[data-action=download]")).toBeTruthy();
  });

  it("shows sealed metadata on view", async () => {
    installFetch({
      "GET /groups/0xg1/files": json(200, [FILE_ROW]),
      "GET /assets/dvre1-aa/meta": json(200, META),
    });
    renderAssetsPage(root, context(storeWithWallet(), new ApiClient(BASE)));
    await vi.waitFor(() => expect(root.querySelector(".file-row")).toBeTruthy());
    press("view");
    await vi.waitFor(() => expect(root.querySelector(".meta-card")).toBeTruthy());
    const card = root.querySelector(".meta-card")!;
    expect(card.textContent).toContain("mask.png");
    expect(card.textContent).toContain("3 of 5");
  });

  it("downloads within the window and saves under the original name", async () => {
    URL.createObjectURL = vi.fn(() => "blob:test");
    URL.revokeObjectURL = vi.fn();
    const payload = new Uint8Array([9, 9, 9]);
    const calls = installFetch({
      "GET /groups/0xg1/files": json(200, [FILE_ROW]),
      "GET /assets/dvre1-aa/meta": json(200, META),
      "GET /assets/dvre1-aa": () => new Response(payload, {
        status: 200, headers: { "X-File-Name": "mask.png" },
      }),
    });
    renderAssetsPage(root, context(storeWithWallet(), new ApiClient(BASE)));
    await vi.waitFor(() => expect(root.querySelector(".file-row")).toBeTruthy());
    press("download");
    await vi.waitFor(() => expect(bannerText()).toMatch(/Saved mask.png/),
                     { timeout: 3000 });

    const download = calls.find((call) => call.url.endsWith("/assets/dvre1-aa"))!;
    expect(download.headers["X-Signed-Message"])
      .toMatch(new RegExp(`^dvre-decrypt%3A${KEY_ID}%3A[0-9a-f]{16}$`));
    expect(download.headers["X-Signature"]).toMatch(/^0x[0-9a-f]{130}$/);
    expect(URL.createObjectURL).toHaveBeenCalledOnce();
  });

  it("shows a denial banner once the access window has passed", async () => {
    installFetch({
      "GET /groups/0xg1/files": json(200, [FILE_ROW]),
      "GET /assets/dvre1-aa/meta": json(200, META),
      "GET /assets/dvre1-aa": json(403, { detail: "acc_failed" }),
    });
    renderAssetsPage(root, context(storeWithWallet(), new ApiClient(BASE)));
    await vi.waitFor(() => expect(root.querySelector(".file-row")).toBeTruthy());
    press("download");
    await vi.waitFor(() => expect(bannerText()).toMatch(/Access denied: acc_failed/),
                     { timeout: 3000 });
  });

  it("renders listing refusals instead of rows", async () => {
    installFetch({
      "GET /groups/0xg1/files": json(403, { detail: "not a member yet" }),
    });
    renderAssetsPage(root, context(storeWithWallet(), new ApiClient(BASE)));
    await vi.waitFor(() => expect(bannerText()).toMatch(/Listing failed: not a member/));
  });
});

describe("page state snapshot", () => {
  it("keeps an unsaved policy draft across re-renders", () => {
    installFetch({});
    const store = signedInStore(ADDRESS);
    renderAgreementsPage(root, context(store, new ApiClient(BASE)));
    const name = field("group-name");
    name.value = "HalfTyped";
    name.dispatchEvent(new Event("input", { bubbles: true }));

    renderAgreementsPage(root, context(store, new ApiClient(BASE)));
    expect(field("group-name").value).toBe("HalfTyped");
  });
});

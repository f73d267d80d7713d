import { describe, expect, it } from "vitest";
import { GroupSummary } from "../src/api.js";
import { Store, emptyPolicyForm, initialState } from "../src/state.js";

const ADDRESS = "0x7E5F4552091A69125d5DfCb7b8C2659029395Bdf";

function groupOwnedBy(owner: string): GroupSummary {
  return {
    group_id: "0xg1", group_name: "DataSharing", group_owner_address: owner,
    permissions: "read", organizations: ["UvA"], countries: ["NL"],
  };
}

describe("session gate", () => {
  it("blocks mutation with no session at all", () => {
    expect(new Store().canMutate()).toBe(false);
  });

  it("blocks mutation once the session has run out", () => {
    const store = new Store(initialState(), () => 1000);
    store.update({ session: { token: "t", address: ADDRESS, expires_at: 999 } });
    expect(store.canMutate()).toBe(false);
  });

  it("allows mutation while the session is live", () => {
    const store = new Store(initialState(), () => 1000);
    store.update({ session: { token: "t", address: ADDRESS, expires_at: 1001 } });
    expect(store.canMutate()).toBe(true);
  });
});

describe("group ownership", () => {
  it("matches the session address ignoring checksum case", () => {
    const store = new Store(initialState(), () => 0);
    store.update({
      session: { token: "t", address: ADDRESS, expires_at: 10 },
      groups: [groupOwnedBy(ADDRESS.toLowerCase())],
      selectedGroup: "0xg1",
    });
    expect(store.ownsSelectedGroup()).toBe(true);
  });

  it("denies ownership of someone else's group", () => {
    const store = new Store(initialState(), () => 0);
    store.update({
      session: { token: "t", address: ADDRESS, expires_at: 10 },
      groups: [groupOwnedBy("0x" + "99".repeat(20))],
      selectedGroup: "0xg1",
    });
    expect(store.ownsSelectedGroup()).toBe(false);
  });

  it("denies ownership with nothing selected", () => {
    expect(new Store().ownsSelectedGroup()).toBe(false);
  });
});

describe("updates", () => {
  it("notifies subscribers and honors unsubscribe", () => {
    const store = new Store();
    const seen: string[] = [];
    const stop = store.subscribe((state) => {
      seen.push(state.selectedGroup ?? "none");
    });
    store.update({ selectedGroup: "0xg1" });
    stop();
    store.update({ selectedGroup: "0xg2" });
    expect(seen).toEqual(["0xg1"]);
  });

  it("clears everything session-derived on sign-out", () => {
    const store = new Store(initialState(), () => 0);
    store.update({
      session: { token: "t", address: ADDRESS, expires_at: 10 },
      groups: [groupOwnedBy(ADDRESS)],
      selectedGroup: "0xg1",
      files: [{ ipfs_hash: "dvre1-aa", file_name: "a.bin",
                added_by: ADDRESS, added_at: 0 }],
    });
    store.clearSession();
    expect(store.state.session).toBeNull();
    expect(store.state.groups).toEqual([]);
    expect(store.state.files).toEqual([]);
    expect(store.state.selectedGroup).toBeNull();
  });

  it("starts with a blank policy draft", () => {
    expect(new Store().state.pendingPolicyForm).toEqual(emptyPolicyForm());
  });
});

// Membership page: pick one of your groups, grant members day-granular
// access windows with date pickers. Dates go to the server as YYYY-MM-DD;
// it expands them to whole days, and the resolved window comes back.

import { ApiError, Member } from "../api.js";
import { banner, clear, el, labeled } from "../dom.js";
import { PageContext } from "./auth.js";

function formatWindow(member: Member): string {
  const day = (timestamp: number) =>
    new Date(timestamp * 1000).toISOString().slice(0, 19).replace("T", " ");
  return `${day(member.access_from)} .. ${day(member.access_to)} UTC`;
}

export function renderMembershipPage(root: HTMLElement, ctx: PageContext): void {
  clear(root);
  const { store, api } = ctx;
  const status = el("div", { class: "status-slot" });

  if (!store.canMutate()) {
    root.append(
      el("h2", {}, ["Membership"]),
      banner("Connect a wallet first to manage members.", "info"),
    );
    return;
  }

  const selector = el("select", { "data-field": "group" });
  for (const group of store.state.groups) {
    const option = el("option", { value: group.group_id }, [
      `${group.group_name} (${group.group_id.slice(0, 10)}...)`,
    ]);
    selector.append(option);
  }
  if (store.state.selectedGroup) selector.value = store.state.selectedGroup;
  selector.addEventListener("change", () => {
    store.update({ selectedGroup: selector.value });
  });

  const address = el("input", {
    "data-field": "member-address",
    placeholder: "0x member address",
  });
  const fromDate = el("input", { type: "date", "data-field": "access-from" });
  const toDate = el("input", { type: "date", "data-field": "access-to" });
  const add = el("button", { "data-action": "add-member" }, ["Add member"]);
  const memberList = el("ul", { class: "member-list" });

  root.append(
    el("h2", {}, ["Membership"]),
    labeled("Group", selector),
    labeled("Member address", address),
    el("div", { class: "row" }, [
      labeled("Access from", fromDate),
      labeled("Access to", toDate),
    ]),
    add,
    status,
    memberList,
  );

  if (store.state.groups.length === 0) {
    status.append(banner("No groups yet; create one under Make agreements.", "info"));
  }

  add.addEventListener("click", async () => {
    clear(status);
    const groupId = selector.value;
    if (!groupId) {
      status.append(banner("Pick a group first", "error"));
      return;
    }
    if (!address.value.trim() || !fromDate.value || !toDate.value) {
      status.append(banner("Address and both dates are required", "error"));
      return;
    }
    try {
      const changed = await api.addMembers(groupId, [{
        eoa_address: address.value.trim(),
        access_from: fromDate.value,
        access_to: toDate.value,
      }]);
      status.append(banner(
        changed.receipt.events[0]?.message ?? "Members updated", "success"));
      clear(memberList);
      for (const member of changed.members) {
        memberList.append(el("li", { class: "member-row" }, [
          el("code", {}, [member.eoa_address]),
          ` ${formatWindow(member)}`,
        ]));
      }
    } catch (err) {
      const detail = err instanceof ApiError ? err.detail : String(err);
      status.append(banner(`Grant failed: ${detail}`, "error"));
    }
  });
}

// Make Agreements page: draft a sharing policy, optionally attach a first
// file, and submit both with one SAVE POLICIES click.

import { ApiError } from "../api.js";
import { banner, clear, el, labeled } from "../dom.js";
import { emptyPolicyForm } from "../state.js";
import { PageContext } from "./auth.js";

function splitCsv(text: string): string[] {
  return text.split(",").map((part) => part.trim()).filter((part) => part.length > 0);
}

export function renderAgreementsPage(root: HTMLElement, ctx: PageContext): void {
  clear(root);
  const { store, api } = ctx;
  const status = el("div", { class: "status-slot" });

  if (!store.canMutate()) {
    root.append(
      el("h2", {}, ["Make agreements"]),
      banner("Connect a wallet first; policies need a signed-in session.", "info"),
    );
    return;
  }

  const draft = store.state.pendingPolicyForm;
  const name = el("input", { "data-field": "group-name", placeholder: "group name" });
  name.value = draft.group_name;
  const permissions = el("input", { "data-field": "permissions" });
  permissions.value = draft.permissions;
  const organizations = el("input", {
    "data-field": "organizations",
    placeholder: "UvA, UiS, UPV",
  });
  organizations.value = draft.organizations.join(", ");
  const countries = el("input", {
    "data-field": "countries",
    placeholder: "NL, NO, ES",
  });
  countries.value = draft.countries.join(", ");
  const filePicker = el("input", { type: "file", "data-field": "first-file" });
  const save = el("button", { "data-action": "save-policies" }, ["SAVE POLICIES"]);

  root.append(
    el("h2", {}, ["Make agreements"]),
    labeled("Group name", name),
    labeled("Permissions", permissions),
    labeled("Organizations", organizations),
    labeled("Countries", countries),
    labeled("Share a file right away (optional)", filePicker),
    save,
    status,
  );

  const keepDraft = () => {
    store.state.pendingPolicyForm = {
      group_name: name.value,
      permissions: permissions.value,
      organizations: splitCsv(organizations.value),
      countries: splitCsv(countries.value),
    };
  };
  for (const input of [name, permissions, organizations, countries]) {
    input.addEventListener("input", keepDraft);
  }

  save.addEventListener("click", async () => {
    clear(status);
    if (!name.value.trim()) {
      status.append(banner("Group name must not be empty", "error"));
      return;
    }
    keepDraft();
    try {
      const created = await api.createGroup({
        group_name: name.value.trim(),
        permissions: permissions.value.trim(),
        organizations: splitCsv(organizations.value),
        countries: splitCsv(countries.value),
      });
      status.append(banner(
        `Group ${created.group_id} created `
        + `(gas ${created.receipt.gas_used.toLocaleString()})`, "success"));

      const file = filePicker.files?.[0];
      if (file) {
        const uploaded = await api.uploadAsset(created.group_id, file.name, file);
        status.append(banner(
          `${uploaded.file_name} pinned as ${uploaded.cid} `
          + `(gas ${uploaded.receipt.gas_used.toLocaleString()})`, "success"));
      }

      store.update({
        groups: await api.listGroups(),
        selectedGroup: created.group_id,
        pendingPolicyForm: emptyPolicyForm(),
      });
    } catch (err) {
      const detail = err instanceof ApiError ? err.detail : String(err);
      status.append(banner(`Save failed: ${detail}`, "error"));
    }
  });
}

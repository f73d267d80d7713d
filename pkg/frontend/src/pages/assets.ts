// Asset manager: list a group's shared files, inspect their sealed
// metadata, and download plaintext. Downloading signs a fresh key
// challenge with the local wallet; whether the key network releases
// shares is decided entirely on the server.

import { ApiError, AssetMeta, FileRecord } from "../api.js";
import { banner, clear, el, labeled, saveBlob } from "../dom.js";
import { bytesToHex, signChallenge } from "../wallet.js";
import { PageContext } from "./auth.js";

const DECRYPT_PREFIX = "dvre-decrypt:";

export function decryptChallenge(keyIdHex: string): string {
  const nonce = new Uint8Array(8);
  crypto.getRandomValues(nonce);
  return `${DECRYPT_PREFIX}${keyIdHex}:${bytesToHex(nonce)}`;
}

function metaCard(meta: AssetMeta): HTMLElement {
  const rows: [string, string][] = [
    ["File", meta.file_name],
    ["Content id", meta.cid],
    ["Size", `${meta.content_length} bytes`],
    ["Access condition", meta.acc],
    ["Chain", meta.chain],
    ["Key shares", `${meta.t} of ${meta.n}`],
    ["Owner", meta.owner],
  ];
  return el("dl", { class: "meta-card" }, rows.flatMap(([term, value]) => [
    el("dt", {}, [term]),
    el("dd", {}, [value]),
  ]));
}

export function renderAssetsPage(root: HTMLElement, ctx: PageContext): void {
  clear(root);
  const { store, api } = ctx;

  if (!store.canMutate()) {
    root.append(
      el("h2", {}, ["Asset manager"]),
      banner("Connect a wallet first to browse assets.", "info"),
    );
    return;
  }

  const status = el("div", { class: "status-slot" });
  const detail = el("div", { class: "detail-slot" });
  const fileList = el("ul", { class: "file-list" });

  const selector = el("select", { "data-field": "group" });
  for (const group of store.state.groups) {
    selector.append(el("option", { value: group.group_id }, [group.group_name]));
  }
  if (store.state.selectedGroup) selector.value = store.state.selectedGroup;

  const refresh = el("button", { "data-action": "refresh" }, ["Refresh listing"]);

  root.append(
    el("h2", {}, ["Asset manager"]),
    labeled("Group", selector),
    refresh,
    status,
    fileList,
    detail,
  );

  const renderFiles = (files: FileRecord[]) => {
    store.update({ files, selectedGroup: selector.value });
    clear(fileList);
    if (files.length === 0) {
      fileList.append(el("li", { class: "file-row" }, ["No files shared yet."]));
      return;
    }
    for (const file of files) {
      const view = el("button", { "data-action": "view" }, ["VIEW"]);
      const download = el("button", { "data-action": "download" }, ["DOWNLOAD"]);
      view.addEventListener("click", () => showMeta(file.ipfs_hash));
      download.addEventListener("click", () => fetchPlaintext(file.ipfs_hash));
      fileList.append(el("li", { class: "file-row" }, [
        el("span", { class: "file-name" }, [file.file_name]),
        el("code", { class: "file-cid" }, [file.ipfs_hash]),
        view,
        download,
      ]));
    }
  };

  const loadFiles = async () => {
    clear(status);
    if (!selector.value) return;
    try {
      renderFiles(await api.listFiles(selector.value));
    } catch (err) {
      const reason = err instanceof ApiError ? err.detail : String(err);
      status.append(banner(`Listing failed: ${reason}`, "error"));
    }
  };

  const showMeta = async (cid: string) => {
    clear(detail);
    try {
      detail.append(metaCard(await api.assetMeta(cid)));
    } catch (err) {
      const reason = err instanceof ApiError ? err.detail : String(err);
      detail.append(banner(`Metadata unavailable: ${reason}`, "error"));
    }
  };

  const fetchPlaintext = async (cid: string) => {
    clear(status);
    const wallet = store.state.wallet;
    if (!wallet) {
      status.append(banner("No wallet loaded; reconnect on the Auth page.", "error"));
      return;
    }
    try {
      const meta = await api.assetMeta(cid);
      const challenge = decryptChallenge(meta.key_id);
      const signature = await signChallenge(wallet, challenge);
      const saved = await api.downloadAsset(cid, challenge, signature);
      saveBlob(saved.fileName, saved.content);
      status.append(banner(`Saved ${saved.fileName}`, "success"));
    } catch (err) {
      if (err instanceof ApiError && err.status === 403) {
        status.append(banner(`Access denied: ${err.detail}`, "error"));
      } else {
        const reason = err instanceof ApiError ? err.detail : String(err);
        status.append(banner(`Download failed: ${reason}`, "error"));
      }
    }
  };

  selector.addEventListener("change", loadFiles);
  refresh.addEventListener("click", loadFiles);

  if (store.state.groups.length === 0) {
    status.append(banner("No groups visible; create or join one first.", "info"));
  } else {
    void loadFiles();
  }
}

// Auth page: import a test wallet, sign the server challenge, land either
// on the dashboard (registered) or the registration form (fresh wallet).

import { ApiClient, ApiError } from "../api.js";
import { banner, clear, el, labeled } from "../dom.js";
import { Store } from "../state.js";
import { generatePrivateKeyHex, signChallenge, walletFromPrivateKey } from "../wallet.js";

export interface PageContext {
  store: Store;
  api: ApiClient;
  navigate: (page: string) => void;
}

export function renderAuthPage(root: HTMLElement, ctx: PageContext): void {
  clear(root);
  const { store, api } = ctx;

  if (store.state.session && store.state.profile) {
    root.append(
      el("h2", {}, ["Connected"]),
      el("p", {}, [
        `Signed in as ${store.state.profile.username} `,
        el("code", {}, [store.state.session.address]),
      ]),
      el("button", { class: "secondary", "data-action": "logout" }, ["Sign out"]),
    );
    root.querySelector("[data-action=logout]")!.addEventListener("click", () => {
      api.setToken(null);
      store.clearSession();
      renderAuthPage(root, ctx);
    });
    return;
  }

  const status = el("div", { class: "status-slot" });
  const keyInput = el("input", {
    type: "password",
    placeholder: "0x-prefixed 32-byte private key",
    "data-field": "private-key",
  });
  const connect = el("button", { "data-action": "connect" }, ["Connect wallet"]);
  const generate = el("button", { class: "secondary", "data-action": "generate" }, [
    "Generate test key",
  ]);

  root.append(
    el("h2", {}, ["Connect a wallet"]),
    el("p", { class: "hint" }, [
      "Paste a test private key; it stays in this tab and only signatures leave it.",
    ]),
    labeled("Private key", keyInput),
    el("div", { class: "row" }, [connect, generate]),
    status,
  );

  generate.addEventListener("click", () => {
    keyInput.value = "0x" + generatePrivateKeyHex();
  });

  connect.addEventListener("click", async () => {
    clear(status);
    let wallet;
    try {
      wallet = walletFromPrivateKey(keyInput.value);
    } catch (err) {
      status.append(banner(`Key rejected: ${(err as Error).message}`, "error"));
      return;
    }
    try {
      const { challenge } = await api.challenge();
      const signature = await signChallenge(wallet, challenge);
      const session = await api.login(challenge, signature, wallet.address);
      api.setToken(session.token);
      store.update({ wallet, session });
    } catch (err) {
      const detail = err instanceof ApiError ? err.detail : String(err);
      status.append(banner(`Login failed: ${detail}`, "error"));
      return;
    }

    try {
      const profile = await api.getUser(wallet.address);
      store.update({ profile });
      ctx.navigate("agreements");
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        renderRegistrationForm(root, ctx); // fresh wallet, needs a profile
      } else {
        const detail = err instanceof ApiError ? err.detail : String(err);
        status.append(banner(`Profile lookup failed: ${detail}`, "error"));
      }
    }
  });
}

export function renderRegistrationForm(root: HTMLElement, ctx: PageContext): void {
  clear(root);
  const { store, api } = ctx;
  const status = el("div", { class: "status-slot" });

  const username = el("input", { "data-field": "username", placeholder: "username" });
  const organization = el("input", {
    "data-field": "organization",
    placeholder: "organization",
  });
  const country = el("input", { "data-field": "country", placeholder: "country" });
  const submit = el("button", { "data-action": "register" }, ["Register"]);

  root.append(
    el("h2", {}, ["Complete registration"]),
    el("p", { class: "hint" }, [
      `No profile exists yet for ${store.state.wallet?.address ?? "this wallet"}.`,
    ]),
    labeled("Username", username),
    labeled("Organization", organization),
    labeled("Country", country),
    submit,
    status,
  );

  submit.addEventListener("click", async () => {
    clear(status);
    if (!username.value.trim()) {
      status.append(banner("Username is required", "error"));
      return;
    }
    try {
      const created = await api.register({
        username: username.value.trim(),
        organization: organization.value.trim(),
        country: country.value.trim(),
      });
      const profile = await api.getUser(store.state.session!.address);
      store.update({ profile });
      status.append(banner(
        `Registered (gas ${created.receipt.gas_used.toLocaleString()})`, "success"));
      ctx.navigate("agreements");
    } catch (err) {
      const detail = err instanceof ApiError ? err.detail : String(err);
      status.append(banner(`Registration failed: ${detail}`, "error"));
    }
  });
}

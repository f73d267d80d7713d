// Tab shell over the four pages. Navigation re-renders the target page
// from current store state; there is no router and no deep linking, a
// refresh simply starts back at the auth page.

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import { Store } from "./state.js";
import { renderAgreementsPage } from "./pages/agreements.js";
import { renderAssetsPage } from "./pages/assets.js";
import { PageContext, renderAuthPage } from "./pages/auth.js";
import { renderMembershipPage } from "./pages/membership.js";

type PageRenderer = (root: HTMLElement, ctx: PageContext) => void;

const PAGES: Record<string, { label: string; render: PageRenderer }> = {
  auth: { label: "Auth", render: renderAuthPage },
  agreements: { label: "Make agreements", render: renderAgreementsPage },
  membership: { label: "Membership", render: renderMembershipPage },
  assets: { label: "Asset manager", render: renderAssetsPage },
};

export interface App {
  navigate: (page: string) => void;
}

export function mountApp(root: HTMLElement, store: Store, api: ApiClient): App {
  const content = el("main", { class: "page" });
  const nav = el("nav", { class: "tabs" });
  const who = el("span", { class: "whoami" });
  const tabs: Record<string, HTMLElement> = {};

  const navigate = (page: string) => {
    const target = page in PAGES ? page : "auth";
    for (const [name, tab] of Object.entries(tabs)) {
      tab.classList.toggle("active", name === target);
    }
    PAGES[target].render(content, { store, api, navigate });
  };

  for (const [name, entry] of Object.entries(PAGES)) {
    const tab = el("button", { class: "tab", "data-page": name }, [entry.label]);
    tab.addEventListener("click", () => navigate(name));
    tabs[name] = tab;
    nav.append(tab);
  }

  const renderWho = () => {
    who.textContent = store.state.session
      ? store.state.session.address
      : "not connected";
  };
  store.subscribe(renderWho);
  renderWho();

  clear(root);
  root.append(
    el("header", { class: "masthead" }, [el("h1", {}, ["dvre workbench"]), who]),
    nav,
    content,
  );
  navigate("auth");
  return { navigate };
}

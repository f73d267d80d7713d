import { ApiClient } from "./api.js";
import { mountApp } from "./app.js";
import { Store } from "./state.js";

// ?api=http://host:port overrides the default local node address.
const base =
  new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8537";

const root = document.getElementById("app");
if (root) {
  mountApp(root, new Store(), new ApiClient(base));
}

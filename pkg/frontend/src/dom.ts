// Tiny DOM helpers; no framework, pages build their trees directly.

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(typeof child === "string" ? document.createTextNode(child) : child);
  }
  return node;
}

export function clear(root: HTMLElement): void {
  while (root.firstChild) root.removeChild(root.firstChild);
}

/** Inline banner for server responses; kind picks the styling. */
export function banner(message: string, kind: "error" | "success" | "info"): HTMLElement {
  return el("div", { class: `banner banner-${kind}`, role: "status" }, [message]);
}

export function labeled(text: string, input: HTMLElement): HTMLElement {
  return el("label", { class: "field" }, [
    el("span", { class: "field-name" }, [text]),
    input,
  ]);
}

export function saveBlob(fileName: string, content: Blob): void {
  const url = URL.createObjectURL(content);
  const anchor = el("a", { href: url, download: fileName });
  document.body.append(anchor);
  anchor.click();
  anchor.remove();
  URL.revokeObjectURL(url);
}

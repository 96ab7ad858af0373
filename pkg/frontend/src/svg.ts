/** Minimal SVG document builder with deterministic serialization. */

export interface SvgNode {
  tag: string;
  attrs: Record<string, string | number>;
  children: SvgNode[];
  text?: string;
}

export function el(
  tag: string,
  attrs: Record<string, string | number> = {},
  children: SvgNode[] = [],
  text?: string
): SvgNode {
  return { tag, attrs, children, text };
}

function escapeText(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function escapeAttr(value: string): string {
  return escapeText(value).replace(/"/g, "&quot;");
}

/** Serialize with stable attribute order (object insertion order). */
export function serialize(node: SvgNode, indent = 0): string {
  const pad = "  ".repeat(indent);
  const attrs = Object.entries(node.attrs)
    .map(([key, value]) => ` ${key}="${escapeAttr(String(value))}"`)
    .join("");
  const open = `${pad}<${node.tag}${attrs}`;
  if (node.children.length === 0 && node.text === undefined) {
    return `${open}/>`;
  }
  if (node.children.length === 0) {
    return `${open}>${escapeText(node.text ?? "")}</${node.tag}>`;
  }
  const inner = node.children.map((child) => serialize(child, indent + 1)).join("\n");
  const closing = node.text !== undefined ? escapeText(node.text) : "";
  return `${open}>\n${inner}\n${pad}${closing}</${node.tag}>`;
}

export function document(root: SvgNode): string {
  return `${serialize(root)}\n`;
}

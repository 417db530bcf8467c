/** Small shared helpers for string-based rendering. */

const REPLACEMENTS: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
  "'": "&#39;",
};

export function escapeHtml(value: string): string {
  return value.replace(/[&<>"']/g, (ch) => REPLACEMENTS[ch]);
}

export const OP_GLYPHS: Record<string, string> = {
  subsumed: "⊑",
  supersumed: "⊒",
  equivalent: "≡",
};

export function opGlyph(op: string): string {
  return OP_GLYPHS[op] ?? op;
}

/** Accepted-alignment panel: entries plus exported artifact texts. */

import type { AlignmentView } from "../types.js";
import { escapeHtml, opGlyph } from "../util.js";

export function alignmentPanel(view: AlignmentView | null): string {
  if (!view || view.entries.length === 0) {
    return `<div class="placeholder">No accepted correspondences yet.</div>`;
  }
  const rows = view.entries
    .map((entry) => {
      const how =
        entry.expressibility === "owl"
          ? entry.owlKind ?? "owl"
          : entry.expressibility === "rule"
            ? entry.ruleName ?? "rule"
            : `rejected: ${entry.rejectReason ?? ""}`;
      return [
        `<tr>`,
        `<td class="term">${escapeHtml(entry.sigma)}</td>`,
        `<td class="op">${opGlyph(entry.op)}</td>`,
        `<td class="term">${escapeHtml(entry.tau)}</td>`,
        `<td>${escapeHtml(how)}</td>`,
        `<td class="muted">[${entry.correspondenceIds.join(", ")}]</td>`,
        `</tr>`,
      ].join("");
    })
    .join("\n");
  return [
    `<table class="alignment"><thead><tr>`,
    `<th>source</th><th></th><th>target</th><th>expressed as</th><th>from</th>`,
    `</tr></thead><tbody>${rows}</tbody></table>`,
    `<h3>alignment.ttl</h3><pre class="artifact">${escapeHtml(view.ttl)}</pre>`,
    view.rules.trim()
      ? `<h3>alignment.rules</h3><pre class="artifact">${escapeHtml(view.rules)}</pre>`
      : "",
  ].join("\n");
}

/** Candidate queue: one row per correspondence, newest decision state. */

import type { Candidate } from "../types.js";
import { escapeHtml, opGlyph } from "../util.js";
import { queueSummary } from "../state.js";

function statusPill(status: string): string {
  const safe = escapeHtml(status);
  return `<span class="pill pill-${safe}">${safe}</span>`;
}

export function queueView(candidates: Candidate[], selectedId: number | null): string {
  if (candidates.length === 0) {
    return `<div class="placeholder">Open a session to fill the queue.</div>`;
  }
  const summary = queueSummary(candidates);
  const rows = candidates
    .map((candidate) => {
      const selected = candidate.id === selectedId ? " selected" : "";
      return [
        `<tr class="queue-row${selected}" data-candidate="${candidate.id}">`,
        `<td class="num">${candidate.id}</td>`,
        `<td>${escapeHtml(candidate.kind)}</td>`,
        `<td class="term">${escapeHtml(candidate.sigma)}</td>`,
        `<td class="op">${opGlyph(candidate.op)}</td>`,
        `<td class="term">${escapeHtml(candidate.tau)}</td>`,
        `<td>${statusPill(candidate.status)}</td>`,
        `</tr>`,
      ].join("");
    })
    .join("\n");
  return [
    `<div class="queue-summary">`,
    `<span>${summary.open} open</span>`,
    `<span>${summary.accepted} accepted</span>`,
    `<span>${summary.discarded} discarded</span>`,
    `</div>`,
    `<table class="queue"><thead><tr>`,
    `<th>#</th><th>kind</th><th>source term</th><th></th><th>target term</th><th>status</th>`,
    `</tr></thead><tbody>`,
    rows,
    `</tbody></table>`,
  ].join("\n");
}

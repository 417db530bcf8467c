/** Ontology browser: class/property listing and neighbor walks. */

import type { NeighborListing, OntologyListing } from "../types.js";
import { escapeHtml } from "../util.js";

export function ontologyPanel(
  listing: OntologyListing | null,
  neighbors: NeighborListing | null,
): string {
  if (!listing) {
    return `<div class="placeholder">Loading ontology…</div>`;
  }
  const classItems = listing.classes
    .map(
      (c) =>
        `<li><button class="linkish" data-term="${escapeHtml(c.display)}">${escapeHtml(c.display)}</button></li>`,
    )
    .join("");
  const propItems = listing.objectProperties
    .map((p) => `<li><code>${escapeHtml(p.display)}</code></li>`)
    .join("");
  const neighborBlock = neighbors
    ? [
        `<h3>${escapeHtml(neighbors.term)} — ${neighbors.direction === "up" ? "superclasses" : "subclasses"}</h3>`,
        `<ul class="neighbor-list">${neighbors.neighbors
          .map(
            (n) =>
              `<li><button class="linkish" data-term="${escapeHtml(n.display)}">${escapeHtml(n.display)}</button></li>`,
          )
          .join("")}</ul>`,
      ].join("\n")
    : "";
  return [
    `<div class="ontology-columns">`,
    `<section><h3>Classes (${listing.classes.length})</h3><ul class="class-list">${classItems}</ul></section>`,
    `<section><h3>Object properties (${listing.objectProperties.length})</h3><ul class="class-list">${propItems}</ul></section>`,
    `<section class="neighbors">${neighborBlock}</section>`,
    `</div>`,
  ].join("\n");
}

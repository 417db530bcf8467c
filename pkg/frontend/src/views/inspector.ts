/** Inspector: validity verdicts, move proposals, decision controls. */

import type { Candidate, MoveListing, Validity } from "../types.js";
import { escapeHtml, opGlyph } from "../util.js";

function verdictBadge(label: string, value: string, good: boolean): string {
  const tone = good ? "good" : "warn";
  return `<div class="verdict verdict-${tone}"><span class="verdict-label">${label}</span><span class="verdict-value">${escapeHtml(value)}</span></div>`;
}

export function validityPanel(validity: Validity): string {
  const parts = [
    `<div class="verdicts">`,
    verdictBadge("logical", validity.logical, validity.logical === "derivable"),
    verdictBadge("structural", validity.structural, validity.structural === "yes"),
    verdictBadge("extensional", validity.extensional, validity.extensional === "consistent"),
    `</div>`,
  ];
  if (validity.counterexamples.length > 0) {
    const items = validity.counterexamples
      .map(
        (ce) =>
          `<li><code>${escapeHtml(ce.item.join(", "))}</code> <span class="muted">${escapeHtml(ce.scenario)}</span></li>`,
      )
      .join("");
    parts.push(`<ul class="counterexamples">${items}</ul>`);
  }
  if (validity.vacuous) {
    parts.push(`<p class="note">Vacuous: the source term has no instances here.</p>`);
  }
  if (validity.trivial) {
    parts.push(`<p class="note note-trivial">Trivial: ${escapeHtml(validity.trivialReason ?? "")}</p>`);
  }
  return parts.join("\n");
}

export function movesPanel(listing: MoveListing): string {
  if (listing.moves.length === 0) {
    return `<div class="placeholder">No ${escapeHtml(listing.phase)} moves available.</div>`;
  }
  const rows = listing.moves
    .map((move, index) => {
      const term = move.termText
        ? `<code class="term">${escapeHtml(move.termText)}</code>`
        : `<span class="muted">upgrade to ≡</span>`;
      const extensional = move.validity.extensional;
      return [
        `<label class="move" data-move-index="${index}">`,
        `<input type="radio" name="move" value="${index}">`,
        `<span class="move-kind">${escapeHtml(move.moveKind)}</span>`,
        term,
        `<span class="move-validity move-${extensional === "consistent" ? "good" : "warn"}">${escapeHtml(extensional)}</span>`,
        `</label>`,
      ].join(" ");
    })
    .join("\n");
  return `<div class="moves">${rows}</div>`;
}

export function inspectorView(
  candidate: Candidate | null,
  validity: Validity | null,
  moves: MoveListing | null,
  phase: "relax" | "strengthen",
): string {
  if (!candidate) {
    return `<div class="placeholder">Select a candidate to inspect it.</div>`;
  }
  const terminal = candidate.status === "accepted" || candidate.status === "discarded";
  const history = candidate.history.length
    ? `<ol class="history">${candidate.history
        .map(
          (step) =>
            `<li><span class="move-kind">${escapeHtml(step.kind)}</span> <code>${escapeHtml(step.before)}</code> → <code>${escapeHtml(step.after)}</code></li>`,
        )
        .join("")}</ol>`
    : `<p class="muted">No moves applied yet.</p>`;
  const phaseTabs = (["relax", "strengthen"] as const)
    .map(
      (name) =>
        `<button class="tab${name === phase ? " active" : ""}" data-phase="${name}"${terminal ? " disabled" : ""}>${name}</button>`,
    )
    .join("");
  return [
    `<header class="inspector-head">`,
    `<h2>Candidate ${candidate.id}</h2>`,
    `<div class="statement"><code>${escapeHtml(candidate.sigma)}</code> <span class="op">${opGlyph(candidate.op)}</span> <code>${escapeHtml(candidate.tau)}</code></div>`,
    `<p class="muted">${escapeHtml(candidate.provenance)}</p>`,
    `</header>`,
    validity ? validityPanel(validity) : "",
    `<section><h3>History</h3>${history}</section>`,
    `<section class="moves-section"><h3>Moves</h3><div class="tabs">${phaseTabs}</div>`,
    moves && !terminal ? movesPanel(moves) : "",
    `</section>`,
    `<section class="decision-controls">`,
    `<input type="text" id="reason" placeholder="reason (recorded in the log)"${terminal ? " disabled" : ""}>`,
    `<button id="apply-move"${terminal ? " disabled" : ""}>Apply move</button>`,
    `<button id="accept" class="accent"${terminal ? " disabled" : ""}>Accept</button>`,
    `<button id="discard" class="danger"${terminal ? " disabled" : ""}>Discard</button>`,
    `</section>`,
  ].join("\n");
}

/** Session setup form and the banner for an open session. */

import type { SessionInfo } from "../types.js";
import { escapeHtml } from "../util.js";

export interface SessionDefaults {
  stores: string;
  source: string;
  target: string;
  hints: string;
}

export const MOLMOD_DEFAULTS: SessionDefaults = {
  stores: "emmo_mini, osmo_viso_vov",
  source: "scenarios/molmod_source.ttl",
  target: "scenarios/molmod_transposed.ttl",
  hints: "hints/molmod.hints",
};

export function sessionForm(defaults: SessionDefaults): string {
  return [
    `<form id="session-form" class="session-form">`,
    `<label>Ontology stores <input name="stores" value="${escapeHtml(defaults.stores)}"></label>`,
    `<label>Source scenario <input name="source" value="${escapeHtml(defaults.source)}" required></label>`,
    `<label>Target scenario <input name="target" value="${escapeHtml(defaults.target)}" required></label>`,
    `<label>Hint file <input name="hints" value="${escapeHtml(defaults.hints)}"></label>`,
    `<button type="submit" class="accent">Open session</button>`,
    `</form>`,
  ].join("\n");
}

export function sessionBanner(info: SessionInfo): string {
  const warnings = info.warnings.length
    ? `<ul class="warnings">${info.warnings
        .map((w) => `<li>${escapeHtml(w)}</li>`)
        .join("")}</ul>`
    : "";
  return [
    `<div class="banner">`,
    `<span class="session-id">session ${escapeHtml(info.sessionId)}</span>`,
    `<span>${info.candidateCount} candidates</span>`,
    `<span class="muted">log: <code>${escapeHtml(info.log)}</code></span>`,
    `</div>`,
    warnings,
  ].join("\n");
}

/** Parse the comma-separated store list of the form into a request value. */
export function parseStores(raw: string): string[] | undefined {
  const names = raw
    .split(",")
    .map((part) => part.trim())
    .filter((part) => part.length > 0);
  return names.length > 0 ? names : undefined;
}

/** Bootstraps the workbench: state, API client, event wiring. */

import { ApiClient, ApiRequestError } from "./api.js";
import {
  initialState,
  refreshInspector,
  runDecision,
  selectedCandidate,
  type WorkbenchState,
} from "./state.js";
import { styles } from "./styles.js";
import type { Decision, NeighborListing, OntologyListing } from "./types.js";
import { alignmentPanel } from "./views/alignment.js";
import { inspectorView } from "./views/inspector.js";
import { ontologyPanel } from "./views/ontology.js";
import { queueView } from "./views/queue.js";
import { MOLMOD_DEFAULTS, parseStores, sessionBanner, sessionForm } from "./views/session.js";

const client = new ApiClient("");
const state: WorkbenchState = initialState();
let ontology: OntologyListing | null = null;
let neighbors: NeighborListing | null = null;

function shell(): string {
  return [
    `<div class="app-shell">`,
    `<header class="hero"><h1>Alignment Workbench</h1>`,
    `<p>Review correspondence candidates, steer them with relaxation and strengthening moves, and export the accepted alignment.</p></header>`,
    state.error ? `<div class="error-bar">${state.error}</div>` : "",
    `<section class="card" id="session-card"></section>`,
    `<div class="layout">`,
    `<section class="card"><h2>Queue</h2><div id="queue"></div></section>`,
    `<section class="card"><h2>Inspector</h2><div id="inspector"></div></section>`,
    `</div>`,
    `<section class="card"><h2>Alignment</h2><div id="alignment"></div></section>`,
    `<section class="card"><h2>Ontology</h2><div id="ontology"></div></section>`,
    `</div>`,
  ].join("\n");
}

function render(): void {
  const app = document.getElementById("app");
  if (!app) return;
  app.innerHTML = shell();
  const sessionCard = document.getElementById("session-card")!;
  sessionCard.innerHTML = state.session
    ? sessionBanner(state.session)
    : sessionForm(MOLMOD_DEFAULTS);
  document.getElementById("queue")!.innerHTML = queueView(state.candidates, state.selectedId);
  document.getElementById("inspector")!.innerHTML = inspectorView(
    selectedCandidate(state),
    state.validity,
    state.moves,
    state.phase,
  );
  document.getElementById("alignment")!.innerHTML = alignmentPanel(state.alignment);
  document.getElementById("ontology")!.innerHTML = ontologyPanel(ontology, neighbors);
  wire();
}

async function guard(work: () => Promise<void>): Promise<void> {
  try {
    await work();
  } catch (error) {
    state.error =
      error instanceof ApiRequestError
        ? `${error.code}: ${error.message}`
        : String(error);
  }
  render();
}

async function openSession(form: HTMLFormElement): Promise<void> {
  const data = new FormData(form);
  const info = await client.createSession({
    stores: parseStores(String(data.get("stores") ?? "")),
    source: String(data.get("source") ?? ""),
    target: String(data.get("target") ?? ""),
    hints: String(data.get("hints") ?? "") || null,
  });
  state.session = info;
  state.candidates = (await client.candidates(info.sessionId)).candidates;
  state.selectedId = state.candidates[0]?.id ?? null;
  state.alignment = null;
  await refreshInspector(client, state);
}

async function selectCandidate(id: number): Promise<void> {
  state.selectedId = id;
  await refreshInspector(client, state);
}

function currentMoveDecision(): Decision | null {
  const candidate = selectedCandidate(state);
  if (!candidate || !state.moves) return null;
  const chosen = document.querySelector<HTMLInputElement>('input[name="move"]:checked');
  if (!chosen) return null;
  const move = state.moves.moves[Number(chosen.value)];
  if (!move) return null;
  const decision: Decision = {
    candidate: candidate.id,
    action: "apply",
    moveKind: move.moveKind,
  };
  if (move.termText) decision.termText = move.termText;
  return decision;
}

async function applyDecision(decision: Decision): Promise<void> {
  await runDecision(client, state, decision);
  await refreshInspector(client, state);
  if (state.session && state.entryCount > 0) {
    state.alignment = await client.alignment(state.session.sessionId);
  }
}

function wire(): void {
  const form = document.getElementById("session-form") as HTMLFormElement | null;
  form?.addEventListener("submit", (event) => {
    event.preventDefault();
    void guard(() => openSession(form));
  });

  document.querySelectorAll<HTMLTableRowElement>(".queue-row").forEach((row) => {
    row.addEventListener("click", () => {
      void guard(() => selectCandidate(Number(row.dataset.candidate)));
    });
  });

  document.querySelectorAll<HTMLButtonElement>(".tab").forEach((tab) => {
    tab.addEventListener("click", () => {
      state.phase = tab.dataset.phase === "strengthen" ? "strengthen" : "relax";
      void guard(() => refreshInspector(client, state));
    });
  });

  const reason = (): string | undefined => {
    const field = document.getElementById("reason") as HTMLInputElement | null;
    return field?.value ? field.value : undefined;
  };

  document.getElementById("apply-move")?.addEventListener("click", () => {
    const decision = currentMoveDecision();
    if (decision) void guard(() => applyDecision(decision));
  });
  document.getElementById("accept")?.addEventListener("click", () => {
    const candidate = selectedCandidate(state);
    if (candidate)
      void guard(() =>
        applyDecision({ candidate: candidate.id, action: "accept", reason: reason() }),
      );
  });
  document.getElementById("discard")?.addEventListener("click", () => {
    const candidate = selectedCandidate(state);
    if (candidate)
      void guard(() =>
        applyDecision({ candidate: candidate.id, action: "discard", reason: reason() }),
      );
  });

  document.querySelectorAll<HTMLButtonElement>("button.linkish").forEach((link) => {
    link.addEventListener("click", () => {
      const term = link.dataset.term;
      if (term)
        void guard(async () => {
          neighbors = await client.neighbors(term, "up");
        });
    });
  });
}

function injectStyles(): void {
  const tag = document.createElement("style");
  tag.textContent = styles;
  document.head.appendChild(tag);
}

async function init(): Promise<void> {
  injectStyles();
  render();
  await guard(async () => {
    ontology = await client.ontologyClasses();
  });
}

void init();

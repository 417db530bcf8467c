/** Session state and the single decision path shared by UI and tests.
 *
 * Every accept/discard/apply issued anywhere in the workbench flows
 * through `runDecision`, so replaying a recorded decision list through
 * it exercises exactly what the buttons do.
 */

import type { ApiClient } from "./api.js";
import type {
  AlignmentView,
  Candidate,
  Decision,
  MoveListing,
  SessionInfo,
  Validity,
} from "./types.js";

export interface WorkbenchState {
  session: SessionInfo | null;
  candidates: Candidate[];
  selectedId: number | null;
  phase: "relax" | "strengthen";
  validity: Validity | null;
  moves: MoveListing | null;
  alignment: AlignmentView | null;
  entryCount: number;
  error: string | null;
}

export function initialState(): WorkbenchState {
  return {
    session: null,
    candidates: [],
    selectedId: null,
    phase: "relax",
    validity: null,
    moves: null,
    alignment: null,
    entryCount: 0,
    error: null,
  };
}

export function selectedCandidate(state: WorkbenchState): Candidate | null {
  if (state.selectedId === null) return null;
  return state.candidates.find((c) => c.id === state.selectedId) ?? null;
}

export function replaceCandidate(state: WorkbenchState, candidate: Candidate): void {
  const index = state.candidates.findIndex((c) => c.id === candidate.id);
  if (index >= 0) {
    state.candidates[index] = candidate;
  }
}

/** Counts shown in the queue header. */
export function queueSummary(candidates: Candidate[]): {
  open: number;
  accepted: number;
  discarded: number;
} {
  const summary = { open: 0, accepted: 0, discarded: 0 };
  for (const candidate of candidates) {
    if (candidate.status === "accepted") summary.accepted += 1;
    else if (candidate.status === "discarded") summary.discarded += 1;
    else summary.open += 1;
  }
  return summary;
}

/** Post one decision and fold the result into the state. */
export async function runDecision(
  client: ApiClient,
  state: WorkbenchState,
  decision: Decision,
): Promise<Candidate> {
  if (!state.session) {
    throw new Error("no open session");
  }
  const result = await client.decide(state.session.sessionId, decision);
  replaceCandidate(state, result.candidate);
  state.entryCount = result.entryCount;
  state.error = null;
  return result.candidate;
}

/** Replay a recorded decision list through the normal decision path. */
export async function driveDecisions(
  client: ApiClient,
  state: WorkbenchState,
  decisions: Decision[],
): Promise<void> {
  for (const decision of decisions) {
    await runDecision(client, state, decision);
  }
}

/** Refresh the inspector panes for the selected candidate. */
export async function refreshInspector(client: ApiClient, state: WorkbenchState): Promise<void> {
  const candidate = selectedCandidate(state);
  if (!state.session || !candidate) {
    state.validity = null;
    state.moves = null;
    return;
  }
  state.validity = await client.validity(state.session.sessionId, candidate.id);
  const terminal = candidate.status === "accepted" || candidate.status === "discarded";
  state.moves = terminal
    ? { phase: state.phase, moves: [] }
    : await client.moves(state.session.sessionId, candidate.id, state.phase);
}

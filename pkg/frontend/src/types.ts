/** Payload shapes of the workbench JSON API (all endpoints under /v1). */

export interface ClassInfo {
  iri: string;
  display: string;
}

export interface OntologyListing {
  classes: ClassInfo[];
  objectProperties: ClassInfo[];
  datatypeProperties: ClassInfo[];
}

export interface NeighborListing {
  term: string;
  direction: "up" | "down";
  neighbors: ClassInfo[];
}

export interface SessionRequest {
  stores?: string[];
  source: string;
  target: string;
  hints?: string | null;
}

export interface SessionInfo {
  sessionId: string;
  log: string;
  candidateCount: number;
  warnings: string[];
}

export interface HistoryStep {
  kind: string;
  before: string;
  after: string;
}

export interface Candidate {
  id: number;
  kind: "class" | "property";
  sigma: string;
  op: "subsumed" | "supersumed" | "equivalent";
  tau: string;
  status: string;
  provenance: string;
  reason: string | null;
  confidence: number | null;
  history: HistoryStep[];
}

export interface Counterexample {
  scenario: string;
  item: string[];
}

export interface Validity {
  logical: "derivable" | "not-derivable";
  structural: "yes" | "unknown";
  extensional: "consistent" | "counterexample";
  counterexamples: Counterexample[];
  vacuous: boolean;
  trivial: boolean;
  trivialReason: string | null;
}

export interface Move {
  moveKind: string;
  termText?: string;
  validity: Validity;
}

export interface MoveListing {
  phase: "relax" | "strengthen";
  moves: Move[];
}

export interface Decision {
  candidate: number;
  action: "apply" | "accept" | "discard";
  moveKind?: string;
  termText?: string;
  reason?: string;
}

export interface DecisionResult {
  candidate: Candidate;
  entryCount: number;
}

export interface AlignmentEntry {
  kind: string;
  sigma: string;
  op: string;
  tau: string;
  expressibility: string;
  owlKind: string | null;
  ruleName: string | null;
  rejectReason: string | null;
  correspondenceIds: number[];
}

export interface AlignmentView {
  entries: AlignmentEntry[];
  ttl: string;
  rules: string;
}

export interface EvalRequest {
  scenario: string;
  termText: string;
  kind?: "class" | "property";
}

export interface EvalResult {
  kind: "class" | "property";
  items?: string[];
  pairs?: [string, string][];
}

export interface RuleVerdict {
  rule: string;
  verdict: "satisfied" | "violated";
  bindingCount: number;
  violations: Record<string, string>[];
}

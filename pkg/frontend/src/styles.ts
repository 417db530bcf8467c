/** Stylesheet, injected by main.ts so the build stays a plain JS bundle. */

export const styles = `
:root {
  --bg: #f5f6f8;
  --surface: #ffffff;
  --text: #16232e;
  --muted: #5d6f7d;
  --line: rgba(22, 35, 46, 0.14);
  --accent: #0a5ea8;
  --good: #0f7a5a;
  --warn: #a8481b;
  --danger: #a82222;
  --radius: 10px;
}

* { box-sizing: border-box; }

body {
  margin: 0;
  font-family: "Segoe UI", system-ui, sans-serif;
  background: var(--bg);
  color: var(--text);
}

.app-shell { width: min(1320px, 100% - 2rem); margin: 1rem auto 3rem; }
.hero h1 { margin: 0; font-size: 1.6rem; }
.hero p { margin: 0.25rem 0 1rem; color: var(--muted); }

.layout { display: grid; grid-template-columns: 1.1fr 1fr; gap: 1rem; align-items: start; }
.card {
  background: var(--surface);
  border: 1px solid var(--line);
  border-radius: var(--radius);
  padding: 1rem;
  margin-bottom: 1rem;
}
.card h2 { margin-top: 0; font-size: 1.05rem; }

.session-form { display: grid; grid-template-columns: repeat(2, 1fr); gap: 0.6rem; }
.session-form label { display: flex; flex-direction: column; font-size: 0.82rem; color: var(--muted); gap: 0.25rem; }
.session-form input { padding: 0.45rem 0.6rem; border: 1px solid var(--line); border-radius: 6px; font: inherit; }
.session-form button { grid-column: span 2; }

button {
  font: inherit;
  padding: 0.45rem 0.9rem;
  border-radius: 6px;
  border: 1px solid var(--line);
  background: var(--surface);
  cursor: pointer;
}
button:disabled { opacity: 0.45; cursor: default; }
button.accent { background: var(--accent); border-color: var(--accent); color: white; }
button.danger { background: var(--danger); border-color: var(--danger); color: white; }
button.linkish { border: none; background: none; color: var(--accent); padding: 0.1rem 0; cursor: pointer; }

.banner { display: flex; gap: 1rem; align-items: baseline; flex-wrap: wrap; }
.session-id { font-weight: 600; }
.warnings { color: var(--warn); margin: 0.4rem 0 0; }

.queue { width: 100%; border-collapse: collapse; font-size: 0.88rem; }
.queue th { text-align: left; color: var(--muted); font-weight: 500; padding: 0.3rem 0.5rem; }
.queue td { padding: 0.35rem 0.5rem; border-top: 1px solid var(--line); }
.queue-row { cursor: pointer; }
.queue-row.selected { background: rgba(10, 94, 168, 0.08); }
.queue-summary { display: flex; gap: 1rem; color: var(--muted); font-size: 0.85rem; margin-bottom: 0.5rem; }
.num { color: var(--muted); }
.term { font-family: "Cascadia Mono", ui-monospace, monospace; font-size: 0.82rem; word-break: break-all; }
.op { text-align: center; }

.pill { padding: 0.1rem 0.55rem; border-radius: 999px; font-size: 0.75rem; border: 1px solid var(--line); }
.pill-accepted { background: rgba(15, 122, 90, 0.12); color: var(--good); }
.pill-discarded { background: rgba(168, 34, 34, 0.1); color: var(--danger); }
.pill-candidate, .pill-relaxed, .pill-strengthened { color: var(--muted); }

.verdicts { display: flex; gap: 0.6rem; margin: 0.6rem 0; flex-wrap: wrap; }
.verdict { display: flex; flex-direction: column; padding: 0.4rem 0.7rem; border-radius: 8px; border: 1px solid var(--line); min-width: 9rem; }
.verdict-label { font-size: 0.72rem; color: var(--muted); }
.verdict-good .verdict-value { color: var(--good); }
.verdict-warn .verdict-value { color: var(--warn); }

.counterexamples { margin: 0.3rem 0; }
.note { color: var(--warn); font-size: 0.85rem; }
.note-trivial { font-weight: 600; }

.tabs { display: flex; gap: 0.4rem; margin-bottom: 0.5rem; }
.tab.active { background: var(--accent); color: white; border-color: var(--accent); }

.moves { display: flex; flex-direction: column; gap: 0.35rem; max-height: 18rem; overflow-y: auto; }
.move { display: flex; gap: 0.5rem; align-items: center; font-size: 0.85rem; padding: 0.3rem 0.4rem; border-radius: 6px; border: 1px solid transparent; }
.move:hover { border-color: var(--line); }
.move-kind { color: var(--accent); white-space: nowrap; }
.move-good { color: var(--good); }
.move-warn { color: var(--warn); }

.decision-controls { display: flex; gap: 0.5rem; margin-top: 0.8rem; flex-wrap: wrap; }
.decision-controls input { flex: 1 1 14rem; padding: 0.45rem 0.6rem; border: 1px solid var(--line); border-radius: 6px; font: inherit; }

.history { font-size: 0.82rem; padding-left: 1.2rem; }
.statement { margin: 0.3rem 0; font-size: 0.95rem; }

.alignment { width: 100%; border-collapse: collapse; font-size: 0.85rem; margin-bottom: 0.8rem; }
.alignment td, .alignment th { padding: 0.3rem 0.5rem; border-top: 1px solid var(--line); text-align: left; }
.artifact { background: #0f1c26; color: #d5e3ee; padding: 0.8rem; border-radius: 8px; overflow-x: auto; font-size: 0.8rem; }

.ontology-columns { display: grid; grid-template-columns: 1fr 1fr 1fr; gap: 1rem; }
.class-list { max-height: 16rem; overflow-y: auto; padding-left: 1rem; font-size: 0.85rem; }
.neighbor-list { padding-left: 1rem; }

.placeholder { color: var(--muted); padding: 1rem 0; }
.muted { color: var(--muted); }
.error-bar { background: rgba(168, 34, 34, 0.1); color: var(--danger); padding: 0.5rem 0.8rem; border-radius: 8px; margin-bottom: 0.8rem; }

@media (max-width: 900px) {
  .layout, .ontology-columns, .session-form { grid-template-columns: 1fr; }
  .session-form button { grid-column: span 1; }
}
`;

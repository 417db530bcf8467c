"""Workspace plumbing: fixture resolution, session logs, replay.

A workbench session wraps the in-memory alignment session with an
append-only decision log.  Every acknowledged mutation is written as one
JSON line, so a session can be reconstructed from its log alone.  The
first line records what was loaded (ontology stores, the two scenario
annotations, the hint file), with paths kept relative to the fixtures
root whenever possible; subsequent lines are decisions.

Replaying a log against the same fixtures is deterministic and is the
basis of both crash recovery and the golden-artifact tests.
"""

from __future__ import annotations

import json
import os
from datetime import datetime, timezone
from pathlib import Path

from .engine import AlignmentSession, EngineError, parse_hints, serialize_alignment
from .namespaces import DEFAULT_PREFIXES
from .scenario import ScenarioGraph, from_triples
from .taxonomy import OntologyBundle, load_bundle
from .terms import parse_class_ref, parse_term, term_text
from .turtle_io import BlankNode, PrefixMap, TripleStore, parse_turtle


def fixtures_root(explicit: str | Path | None = None) -> Path:
    """Explicit path, else $ALIGNFORGE_FIXTURES, else ./fixtures."""
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get("ALIGNFORGE_FIXTURES")
    if env:
        return Path(env)
    return Path("fixtures")


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def load_scenario(path: Path, name: str | None = None) -> ScenarioGraph:
    store = parse_turtle(path.read_text(), base_prefixes=PrefixMap(DEFAULT_PREFIXES))
    return from_triples(store, name=name or path.stem)


def merge_graphs(graphs: list[ScenarioGraph], name: str = "merged") -> ScenarioGraph:
    """Union of several scenario graphs; blank nodes are renamed apart."""
    triples = []
    prefixes = PrefixMap()
    for index, graph in enumerate(graphs):
        for label, base in graph.store.prefixes.items():
            prefixes.bind(label, base)
        for s, p, o in graph.store:
            if isinstance(s, BlankNode):
                s = BlankNode(f"g{index}_{s.label}")
            if isinstance(o, BlankNode):
                o = BlankNode(f"g{index}_{o.label}")
            triples.append((s, p, o))
    return from_triples(TripleStore(triples, prefixes=prefixes), name=name)


class WorkbenchSession:
    """One alignment sitting bound to an append-only decision log."""

    def __init__(
        self,
        session: AlignmentSession,
        prefixes: PrefixMap,
        log_path: Path | None = None,
        open_record: dict | None = None,
    ) -> None:
        self.session = session
        self.prefixes = prefixes
        self.log_path = log_path
        self.step = 0
        if log_path is not None and open_record is not None:
            log_path.parent.mkdir(parents=True, exist_ok=True)
            if not log_path.exists() or log_path.stat().st_size == 0:
                self._append(open_record)

    def _append(self, record: dict) -> None:
        if self.log_path is None:
            return
        with self.log_path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")

    def decide(
        self,
        cid: int,
        action: str,
        move_kind: str | None = None,
        term_text_value: str | None = None,
        reason: str | None = None,
        timestamp: str | None = None,
    ):
        corr = self.session.correspondence(cid)
        term = None
        if term_text_value is not None:
            if corr.kind == "class":
                term = parse_class_ref(term_text_value, self.prefixes)
            else:
                term = parse_term(term_text_value, self.prefixes)
        result = self.session.decide(cid, action, move_kind, term, reason)
        self.step += 1
        record = {"step": self.step, "candidateId": cid, "action": action}
        if move_kind is not None:
            record["moveKind"] = move_kind
        if term_text_value is not None:
            record["termText"] = term_text_value
        if reason is not None:
            record["reason"] = reason
        record["timestamp"] = timestamp or _now()
        self._append(record)
        return result

    def export(self, out_dir: Path) -> dict[str, Path]:
        artifacts = serialize_alignment(self.session.alignment, self.prefixes)
        out_dir.mkdir(parents=True, exist_ok=True)
        ttl_path = out_dir / "alignment.ttl"
        rules_path = out_dir / "alignment.rules"
        ttl_path.write_text(artifacts["ttl"], encoding="utf-8")
        rules_path.write_text(artifacts["rules"], encoding="utf-8")
        return {"ttl": ttl_path, "rules": rules_path}

    def term_display(self, term) -> str:
        if isinstance(term, str):
            compact = self.prefixes.compact(term)
            return compact if compact is not None else f"<{term}>"
        return term_text(term, self.prefixes)


def open_session(
    root: Path,
    stores: list[str],
    source: str,
    target: str,
    hints: str | None = None,
    log_path: Path | None = None,
    timestamp: str | None = None,
) -> WorkbenchSession:
    """Load fixtures and start a logged session.

    `stores` names .ttl files (without extension) inside {root}/ontologies;
    `source`/`target`/`hints` are paths relative to the root (absolute
    paths are honored as given).
    """
    bundle = load_bundle(root / "ontologies", names=stores)
    prefixes = bundle.merged_prefixes()
    for label, base in DEFAULT_PREFIXES.items():
        if prefixes.base(label) is None:
            prefixes.bind(label, base)

    def resolve(rel: str) -> Path:
        path = Path(rel)
        return path if path.is_absolute() else root / rel

    source_graph = load_scenario(resolve(source))
    target_graph = load_scenario(resolve(target))
    hint_list = []
    if hints is not None:
        hint_list = parse_hints(resolve(hints).read_text(), prefixes)

    session = AlignmentSession(
        bundle,
        source_graph,
        target_graph,
        hint_list,
        source_id=source_graph.name,
        target_id=target_graph.name,
    )
    open_record = {
        "step": 0,
        "action": "open",
        "stores": list(stores),
        "source": source,
        "target": target,
    }
    if hints is not None:
        open_record["hints"] = hints
    open_record["timestamp"] = timestamp or _now()
    return WorkbenchSession(session, prefixes, log_path, open_record)


def replay(log_path: Path, root: Path, attach: bool = False) -> WorkbenchSession:
    """Rebuild a session by rerunning a decision log against fixtures.

    With `attach=True` the rebuilt session keeps appending new decisions
    to the same log file (replayed records are never written twice).
    """
    lines = [line for line in log_path.read_text(encoding="utf-8").splitlines() if line.strip()]
    if not lines:
        raise EngineError(f"session log {log_path} is empty")
    head = json.loads(lines[0])
    if head.get("action") != "open":
        raise EngineError("session log must start with an open record")
    bench = open_session(
        root,
        stores=head["stores"],
        source=head["source"],
        target=head["target"],
        hints=head.get("hints"),
        log_path=None,
        timestamp=head.get("timestamp"),
    )
    for line in lines[1:]:
        record = json.loads(line)
        bench.decide(
            record["candidateId"],
            record["action"],
            move_kind=record.get("moveKind"),
            term_text_value=record.get("termText"),
            reason=record.get("reason"),
            timestamp=record.get("timestamp"),
        )
    if attach:
        bench.log_path = log_path
    return bench

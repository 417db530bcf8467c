"""HTTP JSON API (versioned under /v1) for the alignment workbench.

The service exposes the same operations as the command line; the two
are interchangeable because both funnel every mutation through the
append-only session log — a decision is written to the log before the
response is acknowledged, so replaying the log always reconstructs the
acknowledged state.

Error contract: unknown ids are 404, illegal state transitions 409,
malformed term text 422, other bad inputs 400.  Bodies are
lowerCamelCase JSON; errors use {code, message, location?}.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import APIRouter, FastAPI, Request
from fastapi.responses import JSONResponse

from .engine import EngineError, ValidityReport
from .namespaces import DEFAULT_PREFIXES, TOP
from .rules import RuleSyntaxError, check as check_rule, parse_rules
from .scenario import ScenarioError, instances_of
from .taxonomy import ModelError, load_bundle, neighbors
from .terms import TermSyntaxError, parse_class_ref, parse_term
from .turtle_io import ParseError, PrefixMap
from .workspace import WorkbenchSession, load_scenario, merge_graphs, open_session


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, location: str | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.location = location


def _error_response(error: ApiError) -> JSONResponse:
    body = {"code": error.code, "message": error.message}
    if error.location:
        body["location"] = error.location
    return JSONResponse(status_code=error.status, content=body)


class Service:
    """Shared state behind the API: the fixtures root and live sessions."""

    def __init__(self, root: Path, sessions_dir: Path | None = None):
        self.root = root
        self.sessions_dir = sessions_dir or Path("sessions")
        self.sessions: dict[str, WorkbenchSession] = {}
        self.locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        onto = root / "ontologies"
        self.bundle = load_bundle(onto if onto.is_dir() else root)
        self.prefixes = self.bundle.merged_prefixes()
        for label, base in DEFAULT_PREFIXES.items():
            if self.prefixes.base(label) is None:
                self.prefixes.bind(label, base)

    def new_session_id(self) -> str:
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        taken = {p.stem for p in self.sessions_dir.glob("s*.jsonl")} | set(self.sessions)
        number = 1
        while f"s{number}" in taken:
            number += 1
        return f"s{number}"

    def bench(self, session_id: str) -> WorkbenchSession:
        bench = self.sessions.get(session_id)
        if bench is None:
            raise ApiError(404, "unknown-session", f"no session {session_id!r}")
        return bench

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self.locks.setdefault(session_id, threading.Lock())

    def resolve(self, rel: str) -> Path:
        path = Path(rel)
        return path if path.is_absolute() else self.root / rel

    def display(self, iri: str) -> str:
        if iri == TOP:
            return "TOP"
        compact = self.prefixes.compact(iri)
        return compact if compact is not None else f"<{iri}>"


def _candidate_json(bench: WorkbenchSession, corr) -> dict:
    return {
        "id": corr.id,
        "kind": corr.kind,
        "sigma": bench.term_display(corr.sigma),
        "op": corr.op,
        "tau": bench.term_display(corr.tau),
        "status": corr.status,
        "provenance": corr.provenance,
        "reason": corr.reason,
        "confidence": corr.confidence,
        "history": [
            {
                "kind": move.kind,
                "before": bench.term_display(move.before),
                "after": bench.term_display(move.after),
            }
            for move in corr.history
        ],
    }


def _validity_json(bench: WorkbenchSession, report: ValidityReport) -> dict:
    def show(ref: str) -> str:
        compact = bench.prefixes.compact(ref)
        return compact if compact is not None else ref

    return {
        "logical": report.logical,
        "structural": report.structural,
        "extensional": report.extensional,
        "counterexamples": [
            {"scenario": ex["scenario"], "item": [show(ref) for ref in ex["item"]]}
            for ex in report.counterexamples
        ],
        "vacuous": report.vacuous,
        "trivial": report.trivial,
        "trivialReason": report.trivial_reason,
    }


def _entry_json(bench: WorkbenchSession, entry) -> dict:
    return {
        "kind": entry.kind,
        "sigma": bench.term_display(entry.sigma),
        "op": entry.op,
        "tau": bench.term_display(entry.tau),
        "expressibility": entry.expressibility,
        "owlKind": entry.owl_kind,
        "ruleName": entry.rule_name,
        "rejectReason": entry.reject_reason,
        "correspondenceIds": list(entry.correspondence_ids),
    }


def _require(body: dict, key: str):
    if key not in body or body[key] in (None, ""):
        raise ApiError(400, "missing-field", f"request body needs {key!r}", location=key)
    return body[key]


def create_app(
    root: Path,
    sessions_dir: Path | None = None,
    static_dir: Path | None = None,
) -> FastAPI:
    service = Service(root, sessions_dir)
    app = FastAPI(title="alignforge", version="0.1.0")
    app.state.service = service
    router = APIRouter(prefix="/v1")

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, error: ApiError):
        return _error_response(error)

    @app.exception_handler(TermSyntaxError)
    async def _term_error(request: Request, error: TermSyntaxError):
        return _error_response(ApiError(422, "malformed-term", str(error)))

    @app.exception_handler(EngineError)
    async def _engine_error(request: Request, error: EngineError):
        return _error_response(ApiError(409, "illegal-transition", str(error)))

    @app.exception_handler(FileNotFoundError)
    async def _missing_file(request: Request, error: FileNotFoundError):
        return _error_response(ApiError(404, "missing-file", str(error)))

    for domain_error in (ScenarioError, ParseError, RuleSyntaxError, ModelError, KeyError):

        @app.exception_handler(domain_error)
        async def _domain(request: Request, error: Exception):
            return _error_response(ApiError(400, "invalid-input", str(error)))

    @router.get("/ontology/classes")
    def ontology_classes():
        taxonomy = service.bundle.taxonomy

        def listing(lattice):
            names = [n for n in lattice.names() if n != TOP]
            return [
                {"iri": name, "display": service.display(name)}
                for name in sorted(names, key=lambda n: service.display(n))
            ]

        return {
            "classes": listing(taxonomy.classes),
            "objectProperties": listing(taxonomy.object_properties),
            "datatypeProperties": listing(taxonomy.datatype_properties),
        }

    @router.get("/ontology/neighbors")
    def ontology_neighbors(term: str, direction: str = "up"):
        if direction not in ("up", "down"):
            raise ApiError(400, "invalid-input", "direction must be 'up' or 'down'")
        iri = term if "://" in term or term.startswith("urn:") else parse_class_ref(term, service.prefixes)
        found = neighbors(service.bundle.taxonomy, iri, direction)
        return {
            "term": service.display(iri),
            "direction": direction,
            "neighbors": [{"iri": n, "display": service.display(n)} for n in found],
        }

    @router.post("/session")
    def create_session(body: dict):
        source = _require(body, "source")
        target = _require(body, "target")
        stores = body.get("stores") or sorted(
            p.stem for p in (service.root / "ontologies").glob("*.ttl")
        )
        session_id = service.new_session_id()
        log_path = service.sessions_dir / f"{session_id}.jsonl"
        bench = open_session(
            service.root,
            stores=stores,
            source=source,
            target=target,
            hints=body.get("hints"),
            log_path=log_path,
        )
        service.sessions[session_id] = bench
        return {
            "sessionId": session_id,
            "log": str(log_path),
            "candidateCount": len(bench.session.correspondences),
            "warnings": list(bench.session.warnings),
        }

    @router.get("/session/{session_id}/candidates")
    def list_candidates(session_id: str):
        bench = service.bench(session_id)
        return {
            "candidates": [
                _candidate_json(bench, bench.session.correspondence(cid))
                for cid in sorted(bench.session.correspondences)
            ]
        }

    def _corr(bench: WorkbenchSession, cid: int):
        if cid not in bench.session.correspondences:
            raise ApiError(404, "unknown-candidate", f"no candidate {cid}")
        return bench.session.correspondence(cid)

    @router.get("/session/{session_id}/candidate/{cid}/validity")
    def candidate_validity(session_id: str, cid: int):
        bench = service.bench(session_id)
        corr = _corr(bench, cid)
        return _validity_json(bench, bench.session.check_validity(corr))

    @router.get("/session/{session_id}/candidate/{cid}/moves")
    def candidate_moves(session_id: str, cid: int, phase: str = "relax"):
        bench = service.bench(session_id)
        corr = _corr(bench, cid)
        if phase not in ("relax", "strengthen"):
            raise ApiError(400, "invalid-input", "phase must be 'relax' or 'strengthen'")
        proposals = bench.session.propose_moves(corr, phase)
        moves = []
        for proposal in proposals:
            entry = {"moveKind": proposal.move.kind}
            if proposal.move.kind != "identification":
                entry["termText"] = bench.term_display(proposal.move.after)
            entry["validity"] = _validity_json(bench, proposal.validity)
            moves.append(entry)
        return {"phase": phase, "moves": moves}

    @router.post("/session/{session_id}/decide")
    def decide(session_id: str, body: dict):
        bench = service.bench(session_id)
        cid = _require(body, "candidate")
        if not isinstance(cid, int):
            raise ApiError(400, "invalid-input", "candidate must be an integer id")
        _corr(bench, cid)
        action = _require(body, "action")
        with service.lock(session_id):
            corr = bench.decide(
                cid,
                action,
                move_kind=body.get("moveKind"),
                term_text_value=body.get("termText"),
                reason=body.get("reason"),
            )
            return {
                "candidate": _candidate_json(bench, corr),
                "entryCount": len(bench.session.alignment.entries),
            }

    @router.get("/session/{session_id}/alignment")
    def alignment(session_id: str):
        bench = service.bench(session_id)
        from .engine import serialize_alignment

        artifacts = serialize_alignment(bench.session.alignment, bench.prefixes)
        return {
            "entries": [_entry_json(bench, e) for e in bench.session.alignment.entries],
            "ttl": artifacts["ttl"],
            "rules": artifacts["rules"],
        }

    @router.post("/eval")
    def eval_endpoint(body: dict):
        scenario_rel = _require(body, "scenario")
        term_text_value = _require(body, "termText")
        path = service.resolve(scenario_rel)
        if not path.exists():
            raise ApiError(404, "missing-file", f"scenario not found: {scenario_rel}")
        graph = load_scenario(path)
        taxonomy = service.bundle.taxonomy
        if body.get("kind") == "class":
            class_iri = parse_class_ref(term_text_value, service.prefixes)
            nodes = instances_of(graph, taxonomy, class_iri)
            return {"kind": "class", "items": [service.display(n) for n in sorted(nodes)]}
        term = parse_term(term_text_value, service.prefixes)
        from .scenario import eval_term

        pairs = sorted(eval_term(term, graph, taxonomy))
        return {
            "kind": "property",
            "pairs": [[service.display(a), service.display(b)] for a, b in pairs],
        }

    @router.post("/rules/check")
    def rules_check(body: dict):
        if "rulesText" in body and body["rulesText"]:
            rules_doc = body["rulesText"]
        else:
            rules_rel = _require(body, "rulesPath")
            rules_file = service.resolve(rules_rel)
            if not rules_file.exists():
                raise ApiError(404, "missing-file", f"rules not found: {rules_rel}")
            rules_doc = rules_file.read_text(encoding="utf-8")
        scenario_rels = body.get("scenarios") or []
        if not scenario_rels:
            raise ApiError(400, "missing-field", "request body needs 'scenarios'", "scenarios")
        graphs = []
        for rel in scenario_rels:
            path = service.resolve(rel)
            if not path.exists():
                raise ApiError(404, "missing-file", f"scenario not found: {rel}")
            graphs.append(load_scenario(path))
        graph = graphs[0] if len(graphs) == 1 else merge_graphs(graphs)
        rules = parse_rules(rules_doc, service.prefixes)
        results = []
        for rule in rules:
            outcome = check_rule(rule, graph, service.bundle.taxonomy)
            results.append(
                {
                    "rule": rule.name,
                    "verdict": "satisfied" if outcome.satisfied else "violated",
                    "bindingCount": len(outcome.bindings),
                    "violations": [
                        {var: service.display(ref) for var, ref in sorted(b.items())}
                        for b in outcome.violated
                    ],
                }
            )
        return {"results": results}

    app.include_router(router)

    if static_dir is not None and static_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="workbench")

    return app

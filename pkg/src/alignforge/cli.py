"""Command-line workbench.

Every subcommand is a thin wrapper over the library: stateless queries
load their inputs fresh, while session-backed commands (check, suggest,
decide, classify, export-alignment, replay) rebuild the session by
replaying its append-only log and, when they mutate, append the new
decision before reporting it.

Reports are printed as indented `key: value` blocks so they stay both
human-readable and trivially machine-parseable.  Exit codes: 0 success,
1 domain error (bad data, illegal transition), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import alignment_from_store, score, tier_check
from .engine import EngineError, ValidityReport
from .namespaces import DEFAULT_PREFIXES, TOP
from .rules import RuleSyntaxError, check as check_rule, materialize, parse_rules
from .scenario import ScenarioError, export_class_list, import_csv
from .taxonomy import ModelError, OntologyBundle, load_bundle
from .terms import TermSyntaxError
from .turtle_io import ParseError, PrefixMap, parse_turtle, serialize_turtle
from .workspace import (
    WorkbenchSession,
    fixtures_root,
    load_scenario,
    merge_graphs,
    open_session,
    replay,
)

DOMAIN_ERRORS = (
    EngineError,
    ModelError,
    ScenarioError,
    RuleSyntaxError,
    TermSyntaxError,
    ParseError,
    FileNotFoundError,
    KeyError,
    json.JSONDecodeError,
)


# -- path plumbing ----------------------------------------------------


def _root(args) -> Path:
    """Fixtures root: --bundle flag, else $ALIGNFORGE_FIXTURES, else ./fixtures."""
    root = fixtures_root(getattr(args, "bundle", None))
    if root.name == "ontologies" and root.is_dir():
        return root.parent
    return root


def _ontologies_dir(args) -> Path:
    root = _root(args)
    onto = root / "ontologies"
    return onto if onto.is_dir() else root


def _load_bundle(args, stores: list[str] | None = None) -> OntologyBundle:
    return load_bundle(_ontologies_dir(args), names=stores)


def _session_path(args, must_exist: bool) -> Path:
    path = Path(args.session)
    if path.exists():
        return path
    fallback = _root(args) / "sessions" / args.session
    if fallback.exists():
        return fallback
    if must_exist:
        raise FileNotFoundError(f"session log not found: {args.session}")
    return path


def _merged_prefixes(bundle: OntologyBundle) -> PrefixMap:
    prefixes = bundle.merged_prefixes()
    for label, base in DEFAULT_PREFIXES.items():
        if prefixes.base(label) is None:
            prefixes.bind(label, base)
    return prefixes


def _display(prefixes: PrefixMap, iri: str) -> str:
    if iri == TOP:
        return "TOP"
    compact = prefixes.compact(iri)
    return compact if compact is not None else f"<{iri}>"


# -- report blocks ----------------------------------------------------


def _validity_lines(report: ValidityReport, prefixes: PrefixMap, indent: str = "  ") -> list[str]:
    lines = [
        f"{indent}logical: {report.logical}",
        f"{indent}structural: {report.structural}",
        f"{indent}extensional: {report.extensional}",
        f"{indent}vacuous: {str(report.vacuous).lower()}",
        f"{indent}trivial: {str(report.trivial).lower()}",
    ]
    if report.trivial_reason:
        lines.append(f"{indent}trivialReason: {report.trivial_reason}")
    for example in report.counterexamples:
        item = " ".join(_display(prefixes, ref) for ref in example["item"])
        lines.append(f"{indent}counterexample: {example['scenario']} {item}")
    return lines


def _candidate_lines(bench: WorkbenchSession, corr) -> list[str]:
    lines = [
        f"candidate: {corr.id}",
        f"  kind: {corr.kind}",
        f"  sigma: {bench.term_display(corr.sigma)}",
        f"  op: {corr.op}",
        f"  tau: {bench.term_display(corr.tau)}",
        f"  status: {corr.status}",
        f"  provenance: {corr.provenance}",
    ]
    if corr.reason:
        lines.append(f"  reason: {corr.reason}")
    for move in corr.history:
        lines.append(f"  move: {move.kind}")
    return lines


def _print(lines: list[str]) -> None:
    sys.stdout.write("\n".join(lines) + ("\n" if lines else ""))


# -- subcommands ------------------------------------------------------


def cmd_parse(args) -> int:
    store = parse_turtle(Path(args.file).read_text(encoding="utf-8"))
    text = serialize_turtle(store)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _print([f"triples: {len(store.triples)}", f"out: {args.out}"])
    else:
        sys.stdout.write(text)
    return 0


def cmd_taxonomy(args) -> int:
    bundle = _load_bundle(args, args.stores)
    prefixes = _merged_prefixes(bundle)
    taxonomy = bundle.taxonomy
    lines: list[str] = []
    sections = [
        ("class", taxonomy.classes),
        ("objectProperty", taxonomy.object_properties),
        ("datatypeProperty", taxonomy.datatype_properties),
    ]
    for label, lattice in sections:
        edges = lattice.reduced_edges() if args.reduce else lattice.closure_edges()
        for sub, super_ in edges:
            lines.append(f"{label}: {_display(prefixes, sub)} <= {_display(prefixes, super_)}")
        for members in lattice.partitions():
            joined = " = ".join(_display(prefixes, m) for m in members)
            lines.append(f"{label}Equivalence: {joined}")
    _print(lines)
    return 0


def _scenario_pair(args, root: Path) -> tuple[str, str]:
    scenarios = args.scenario or []
    roles = args.roles or []
    if len(scenarios) != 2 or sorted(roles) != ["source", "target"]:
        raise EngineError(
            "exactly two --scenario files are required, one --as source and one --as target"
        )
    paired = dict(zip(roles, scenarios))

    def normalize(path_str: str) -> str:
        path = Path(path_str)
        try:
            return str(path.resolve().relative_to(root.resolve()))
        except ValueError:
            return str(path)

    return normalize(paired["source"]), normalize(paired["target"])


def cmd_candidates(args) -> int:
    root = _root(args)
    stores = args.stores or [p.stem for p in sorted(_ontologies_dir(args).glob("*.ttl"))]
    source, target = _scenario_pair(args, root)
    log_path = Path(args.session) if args.session else None
    bench = open_session(root, stores, source, target, hints=args.hints, log_path=log_path)
    lines = [f"candidateCount: {len(bench.session.correspondences)}"]
    if args.session:
        lines.append(f"session: {args.session}")
    for cid in sorted(bench.session.correspondences):
        lines.extend(_candidate_lines(bench, bench.session.correspondence(cid)))
    for warning in bench.session.warnings:
        lines.append(f"warning: {warning}")
    _print(lines)
    return 0


def cmd_check(args) -> int:
    bench = replay(_session_path(args, must_exist=True), _root(args))
    cids = [args.candidate] if args.candidate else sorted(bench.session.correspondences)
    lines: list[str] = []
    for cid in cids:
        corr = bench.session.correspondence(cid)
        lines.extend(_candidate_lines(bench, corr))
        lines.extend(_validity_lines(bench.session.check_validity(corr), bench.prefixes))
    _print(lines)
    return 0


def cmd_suggest(args) -> int:
    bench = replay(_session_path(args, must_exist=True), _root(args))
    corr = bench.session.correspondence(args.candidate)
    proposals = bench.session.propose_moves(corr, args.phase)
    lines = [f"candidate: {corr.id}", f"phase: {args.phase}", f"moveCount: {len(proposals)}"]
    for proposal in proposals:
        lines.append(f"move: {proposal.move.kind}")
        if proposal.move.kind != "identification":
            lines.append(f"  term: {bench.term_display(proposal.move.after)}")
        lines.extend(_validity_lines(proposal.validity, bench.prefixes))
    _print(lines)
    return 0


def cmd_decide(args) -> int:
    bench = replay(_session_path(args, must_exist=True), _root(args), attach=True)
    corr = bench.decide(
        args.candidate,
        args.action,
        move_kind=args.move,
        term_text_value=args.term,
        reason=args.reason,
    )
    lines = _candidate_lines(bench, corr)
    _print(lines)
    return 0


def cmd_classify(args) -> int:
    bench = replay(_session_path(args, must_exist=True), _root(args))
    lines = [f"entryCount: {len(bench.session.alignment.entries)}"]
    for index, entry in enumerate(bench.session.alignment.entries, start=1):
        lines.append(f"entry: {index}")
        lines.append(f"  kind: {entry.kind}")
        lines.append(f"  sigma: {bench.term_display(entry.sigma)}")
        lines.append(f"  op: {entry.op}")
        lines.append(f"  tau: {bench.term_display(entry.tau)}")
        lines.append(f"  expressibility: {entry.expressibility}")
        if entry.owl_kind:
            lines.append(f"  owlKind: {entry.owl_kind}")
        if entry.rule_name:
            lines.append(f"  ruleName: {entry.rule_name}")
        if entry.reject_reason:
            lines.append(f"  rejectReason: {entry.reject_reason}")
        joined = ", ".join(str(c) for c in entry.correspondence_ids)
        lines.append(f"  correspondences: [{joined}]")
    _print(lines)
    return 0


def _export(bench: WorkbenchSession, out: str) -> list[str]:
    paths = bench.export(Path(out))
    return [f"ttl: {paths['ttl']}", f"rules: {paths['rules']}"]


def cmd_export_alignment(args) -> int:
    bench = replay(_session_path(args, must_exist=True), _root(args))
    _print(_export(bench, args.out))
    return 0


def cmd_replay(args) -> int:
    bench = replay(_session_path(args, must_exist=True), _root(args))
    lines = [
        f"steps: {bench.step}",
        f"entryCount: {len(bench.session.alignment.entries)}",
    ]
    if args.out:
        lines.extend(_export(bench, args.out))
    _print(lines)
    return 0


def _load_scenarios(args):
    graphs = [load_scenario(Path(path)) for path in (args.scenario or [])]
    if not graphs:
        raise EngineError("at least one --scenario file is required")
    if len(graphs) == 1:
        return graphs[0]
    return merge_graphs(graphs)


def cmd_rules_check(args) -> int:
    bundle = _load_bundle(args, args.stores)
    prefixes = _merged_prefixes(bundle)
    graph = _load_scenarios(args)
    rules = parse_rules(Path(args.rules).read_text(encoding="utf-8"), prefixes)
    lines: list[str] = []
    for rule in rules:
        result = check_rule(rule, graph, bundle.taxonomy)
        verdict = "satisfied" if result.satisfied else "violated"
        lines.append(f"rule: {rule.name}")
        lines.append(f"  verdict: {verdict}")
        lines.append(f"  bindings: {len(result.bindings)}")
        for binding in result.violated:
            pairs = " ".join(
                f"{var}={_display(prefixes, ref)}" for var, ref in sorted(binding.items())
            )
            lines.append(f"  violation: {pairs}")
    _print(lines)
    return 0


def cmd_rules_apply(args) -> int:
    bundle = _load_bundle(args, args.stores)
    prefixes = _merged_prefixes(bundle)
    graph = _load_scenarios(args)
    rules = parse_rules(Path(args.rules).read_text(encoding="utf-8"), prefixes)
    lines: list[str] = []
    total = 0
    for rule in rules:
        graph, report = materialize(rule, graph, bundle.taxonomy)
        created = len(report.created)
        total += created
        lines.append(f"rule: {rule.name}")
        lines.append(f"  materialized: {created}")
    lines.append(f"created: {total}")
    if args.out:
        Path(args.out).write_text(serialize_turtle(graph.store), encoding="utf-8")
        lines.append(f"out: {args.out}")
    _print(lines)
    return 0


def cmd_metrics(args) -> int:
    aligned = alignment_from_store(parse_turtle(Path(args.alignment).read_text(encoding="utf-8")))
    reference = alignment_from_store(parse_turtle(Path(args.reference).read_text(encoding="utf-8")))
    report = score(aligned, reference).as_dict()
    lines = []
    for key in ("alignedSize", "referenceSize", "intersectionSize", "precision", "recall", "fMeasure"):
        value = report[key]
        lines.append(f"{key}: {'undefined' if value is None else value}")
    _print(lines)
    return 0


def cmd_tier_check(args) -> int:
    bundle = _load_bundle(args, args.stores)
    prefixes = _merged_prefixes(bundle)
    report = tier_check(bundle)
    lines = []
    for class_iri in sorted(report.verdicts):
        verdict = report.verdicts[class_iri]
        if verdict.kind == "category":
            detail = "category " + " ".join(_display(prefixes, c) for c in verdict.categories)
        else:
            detail = verdict.kind
        lines.append(f"class {_display(prefixes, class_iri)}: {detail}")
    lines.append(f"violations: {len(report.violations)}")
    for violation in report.violations:
        lines.append(
            f"violation: {_display(prefixes, violation['class'])} store={violation['store']}"
        )
    _print(lines)
    return 0


def cmd_import_csv(args) -> int:
    colmap = None
    if args.colmap:
        colmap = json.loads(Path(args.colmap).read_text(encoding="utf-8"))
    graph = import_csv(
        Path(args.file).read_text(encoding="utf-8"),
        colmap=colmap,
        name=Path(args.file).stem,
    )
    lines = [f"nodes: {len(graph.nodes)}", f"edges: {len(graph.edges)}"]
    if args.out:
        Path(args.out).write_text(serialize_turtle(graph.store), encoding="utf-8")
        lines.append(f"out: {args.out}")
    _print(lines)
    return 0


def cmd_export_classlist(args) -> int:
    graph = load_scenario(Path(args.file))
    text = export_class_list(graph, graph.store.prefixes)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _print([f"out: {args.out}"])
    else:
        sys.stdout.write(text)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(
        _root(args),
        sessions_dir=Path(args.out) if args.out else None,
        static_dir=Path(args.static) if args.static else None,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


# -- parser -----------------------------------------------------------


def _add_bundle(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--bundle", help="fixtures root or ontologies directory")
    parser.add_argument(
        "--stores",
        action="append",
        help="ontology store name to load (repeatable; default: all)",
    )


def _add_session(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--session", required=True, help="session log file")
    _add_bundle(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alignforge",
        description="Ontology alignment workbench: candidates, moves, rules, metrics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a Turtle file and reserialize it")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_parse)

    p = sub.add_parser("taxonomy", help="print subsumption edges of the loaded bundle")
    _add_bundle(p)
    p.add_argument("--reduce", action="store_true", help="transitive reduction instead of closure")
    p.set_defaults(handler=cmd_taxonomy)

    p = sub.add_parser("candidates", help="generate correspondence candidates")
    _add_bundle(p)
    p.add_argument("--scenario", action="append", help="scenario file (give twice)")
    p.add_argument("--as", dest="roles", action="append", choices=["source", "target"])
    p.add_argument("--hints", help="hint file of extra property candidates")
    p.add_argument("--session", help="start an append-only session log at this path")
    p.set_defaults(handler=cmd_candidates)

    p = sub.add_parser("check", help="validity report for session candidates")
    _add_session(p)
    p.add_argument("--candidate", type=int)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("suggest", help="propose relaxation or strengthening moves")
    _add_session(p)
    p.add_argument("--candidate", type=int, required=True)
    p.add_argument("--phase", choices=["relax", "strengthen"], required=True)
    p.set_defaults(handler=cmd_suggest)

    p = sub.add_parser("decide", help="apply a move, accept, or discard a candidate")
    _add_session(p)
    p.add_argument("--candidate", type=int, required=True)
    p.add_argument("--action", choices=["apply", "accept", "discard"], required=True)
    p.add_argument("--move", help="move kind for --action apply")
    p.add_argument("--term", help="replacement term text for term-changing moves")
    p.add_argument("--reason", help="free-text justification (recorded in the log)")
    p.set_defaults(handler=cmd_decide)

    p = sub.add_parser("classify", help="expressibility split of the accepted alignment")
    _add_session(p)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("export-alignment", help="write alignment.ttl and alignment.rules")
    _add_session(p)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_export_alignment)

    p = sub.add_parser("replay", help="rebuild a session from its log")
    _add_session(p)
    p.add_argument("--out", help="also export alignment artifacts here")
    p.set_defaults(handler=cmd_replay)

    p = sub.add_parser("rules-check", help="check rewrite rules against scenarios")
    _add_bundle(p)
    p.add_argument("--rules", required=True)
    p.add_argument("--scenario", action="append", required=True)
    p.set_defaults(handler=cmd_rules_check)

    p = sub.add_parser("rules-apply", help="materialize rule consequents with fresh witnesses")
    _add_bundle(p)
    p.add_argument("--rules", required=True)
    p.add_argument("--scenario", action="append", required=True)
    p.add_argument("--out", help="write the enriched scenario as Turtle")
    p.set_defaults(handler=cmd_rules_apply)

    p = sub.add_parser("metrics", help="precision/recall/F-measure of one alignment vs a reference")
    p.add_argument("--alignment", required=True)
    p.add_argument("--reference", required=True)
    p.set_defaults(handler=cmd_metrics)

    p = sub.add_parser("tier-check", help="layered-conformance verdicts for every declared class")
    _add_bundle(p)
    p.set_defaults(handler=cmd_tier_check)

    p = sub.add_parser("import-csv", help="import a spreadsheet scenario as a graph")
    p.add_argument("file")
    p.add_argument("--colmap", help="column-mapping JSON file")
    p.add_argument("--out", help="write the graph as Turtle")
    p.set_defaults(handler=cmd_import_csv)

    p = sub.add_parser("export-classlist", help="write the class-list text form of a scenario")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_export_classlist)

    p = sub.add_parser("serve", help="run the HTTP JSON API")
    _add_bundle(p)
    p.add_argument("--port", type=int, default=8420)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--out", help="directory for session logs (default: ./sessions)")
    p.add_argument("--static", help="directory of static workbench assets to serve at /")
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DOMAIN_ERRORS as error:
        message = str(error)
        if isinstance(error, KeyError):
            message = f"unknown name {message}"
        sys.stderr.write(f"error: {message}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

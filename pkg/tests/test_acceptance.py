"""Acceptance gate: one test per shipped guarantee.

Every test here states its expected values inline (hand-frozen oracles)
rather than importing them from the code under test, so a regression in
the library cannot silently rewrite the expectations.
"""

import csv
import io
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from alignforge.analysis import score, tier_check
from alignforge.engine import parse_hints
from alignforge.namespaces import DEFAULT_PREFIXES
from alignforge.rules import check as check_rule
from alignforge.rules import materialize, parse_rules
from alignforge.scenario import (
    ScenarioError,
    export_class_list,
    eval_term,
    import_csv,
)
from alignforge.taxonomy import (
    OntologyBundle,
    augment,
    build_taxonomy,
    load_bundle,
    subsumes,
    transitive_reduction,
)
from alignforge.terms import (
    Atom,
    Chain,
    Intersection,
    Inverse,
    ObjectRestriction,
    SubjectRestriction,
    normalize,
)
from alignforge.turtle_io import (
    PrefixMap,
    isomorphic,
    parse_turtle,
    serialize_turtle,
)
from alignforge.workspace import load_scenario, merge_graphs, replay

REPO = Path(__file__).resolve().parents[1]
FIXTURES = REPO / "fixtures"

# The complete OWL-expressible outcome of the recorded molecular-modelling
# session, frozen by hand.  Triple-set equality against this block is the
# gate for the whole decision pipeline.
EXPECTED_ALIGNMENT_TTL = """
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix evmpo: <https://purl.vimmp.eu/semantics/evmpo#> .
@prefix osmo: <https://purl.vimmp.eu/semantics/osmo#> .
@prefix viso: <https://purl.vimmp.eu/semantics/viso#> .
@prefix viso-am: <https://purl.vimmp.eu/semantics/viso-am#> .
@prefix emmo-material: <http://emmo.info/emmo/material#> .
@prefix emmo-models: <http://emmo.info/emmo/models#> .
@prefix emmo-graphical: <http://emmo.info/emmo/graphical#> .
@prefix emmo-mereotopology: <http://emmo.info/emmo/mereotopology#> .

evmpo:material owl:equivalentClass emmo-material:material .
osmo:materials_relation owl:equivalentClass emmo-models:material_relation .
viso:model_object rdfs:subClassOf emmo-graphical:symbolic .
viso-am:structureless_object rdfs:subClassOf emmo-graphical:symbol .
viso:has_part rdfs:subPropertyOf emmo-mereotopology:has_part .
"""


def test_recorded_session_reproduces_the_published_alignment(tmp_path):
    started = time.monotonic()
    bench = replay(FIXTURES / "sessions" / "golden-session.jsonl", FIXTURES)
    paths = bench.export(tmp_path)
    elapsed = time.monotonic() - started

    produced = parse_turtle(Path(paths["ttl"]).read_text())
    expected = parse_turtle(EXPECTED_ALIGNMENT_TTL)
    assert produced.triple_set() == expected.triple_set()

    rules_text = Path(paths["rules"]).read_text()
    assert rules_text.count("rule ") == 2
    assert "rule align_9 " in rules_text
    assert "rule align_10 " in rules_text

    session = bench.session
    assert session.correspondence(3).status == "discarded"
    merged = [
        entry
        for entry in session.alignment.entries
        if entry.correspondence_ids == [5, 6, 7]
    ]
    assert len(merged) == 1

    assert elapsed < 1.0, f"replay+export took {elapsed:.2f}s"


def test_emitted_alignment_supports_the_cross_ontology_deductions(tmp_path):
    started = time.monotonic()
    bench = replay(FIXTURES / "sessions" / "golden-session.jsonl", FIXTURES)
    paths = bench.export(tmp_path)

    store = parse_turtle(Path(paths["ttl"]).read_text())
    base = bench.session.base_taxonomy
    rdfs = "http://www.w3.org/2000/01/rdf-schema#"
    owl = "http://www.w3.org/2002/07/owl#"
    class_edges, class_eqs = [], []
    for s, p, o in store:
        if p.value == rdfs + "subClassOf":
            class_edges.append((s.value, o.value))
        elif p.value == owl + "equivalentClass":
            class_eqs.append((s.value, o.value))
    loaded = augment(base, class_edges=class_edges, class_equivalences=class_eqs)

    graphical = "http://emmo.info/emmo/graphical#"
    viso_am = "https://purl.vimmp.eu/semantics/viso-am#"
    assert subsumes(loaded, graphical + "symbol", viso_am + "lj_site")
    assert subsumes(loaded, graphical + "symbolic", viso_am + "rigid_object")
    # neither deduction holds before the alignment is loaded
    assert not subsumes(base, graphical + "symbol", viso_am + "lj_site")
    assert not subsumes(base, graphical + "symbolic", viso_am + "rigid_object")

    assert time.monotonic() - started < 1.0


def test_metric_values_are_exact(tmp_path):
    bench = replay(FIXTURES / "sessions" / "golden-session.jsonl", FIXTURES)
    golden = bench.session.alignment
    identity = score(golden, golden)
    assert (identity.precision, identity.recall, identity.f_measure) == (
        Fraction(1),
        Fraction(1),
        Fraction(1),
    )

    from alignforge.engine import SUBSUMED, AlignmentEntry, AlignmentSet

    def entry(i: int) -> AlignmentEntry:
        return AlignmentEntry(
            kind="class",
            sigma=f"https://example.org/a#{i}",
            tau=f"https://example.org/b#{i}",
            op=SUBSUMED,
            correspondence_ids=[i],
            expressibility="owl",
            owl_kind="subClassOf",
        )

    aligned = AlignmentSet("s", "t", [entry(i) for i in range(4)])
    reference = AlignmentSet("s", "t", [entry(i) for i in range(3)] + [entry(10), entry(11)])
    report = score(aligned, reference)
    assert report.precision == Fraction(3, 4)
    assert report.recall == Fraction(3, 5)
    assert abs(float(report.precision) - 0.75) < 1e-12
    assert abs(float(report.recall) - 0.6) < 1e-12
    assert abs(float(report.f_measure) - 2 / 3) < 1e-12


def test_turtle_round_trip_preserves_every_shipped_fixture():
    fixture_files = sorted(FIXTURES.rglob("*.ttl"))
    assert len(fixture_files) >= 6
    for path in fixture_files:
        original = parse_turtle(path.read_text())
        echoed = parse_turtle(serialize_turtle(original))
        assert isomorphic(original, echoed), path.name

    source = (FIXTURES / "scenarios" / "molmod_source.ttl").read_text()
    assert '"231-635-3"' in serialize_turtle(parse_turtle(source))
    params = (FIXTURES / "scenarios" / "molmod_parameters.ttl").read_text()
    assert "2.5764" in serialize_turtle(parse_turtle(params))


def _random_term(rng: random.Random, atoms: list[str], classes: list[str], depth: int):
    if depth == 0 or rng.random() < 0.35:
        return Atom(rng.choice(atoms))
    pick = rng.randrange(3)
    if pick == 0:
        return Inverse(_random_term(rng, atoms, classes, depth - 1))
    if pick == 1:
        return Chain(
            _random_term(rng, atoms, classes, depth - 1),
            _random_term(rng, atoms, classes, depth - 1),
        )
    parts = [_random_term(rng, atoms, classes, depth - 1)]
    if rng.random() < 0.5:
        parts.append(SubjectRestriction(rng.choice(classes)))
    if rng.random() < 0.5:
        parts.append(ObjectRestriction(rng.choice(classes)))
    if len(parts) == 1:
        parts.append(_random_term(rng, atoms, classes, depth - 1))
    return Intersection(tuple(parts))


def _random_scenario(rng: random.Random, atoms: list[str], classes: list[str]):
    ns = "https://example.org/rand#"
    node_count = rng.randrange(2, 9)
    lines = ["@prefix ex: <https://example.org/rand#> .",
             "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> ."]
    for i in range(node_count):
        cls = rng.choice(classes)
        lines.append(f"ex:n{i} rdf:type <{cls}> .")
    for _ in range(rng.randrange(1, 13)):
        a, b = rng.randrange(node_count), rng.randrange(node_count)
        prop = rng.choice(atoms)
        lines.append(f"ex:n{a} <{prop}> ex:n{b} .")
    from alignforge.scenario import from_triples

    return from_triples(parse_turtle("\n".join(lines)))


def test_term_algebra_and_reduction_properties_hold_at_scale():
    started = time.monotonic()
    ns = "https://example.org/voc#"
    atoms = [ns + p for p in ("p", "q", "r")]
    classes = [ns + c for c in ("A", "B", "C")]
    vocab = parse_turtle(
        "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
        "@prefix ex: <https://example.org/voc#> .\n"
        "ex:A a owl:Class . ex:B a owl:Class ; rdfs:subClassOf ex:A .\n"
        "ex:C a owl:Class .\n"
        "ex:p a owl:ObjectProperty . ex:q a owl:ObjectProperty ; rdfs:subPropertyOf ex:p .\n"
        "ex:r a owl:ObjectProperty .\n"
    )
    taxonomy = build_taxonomy([vocab])

    rng = random.Random(20260819)
    for _ in range(500):
        term = _random_term(rng, atoms, classes, depth=5)
        graph = _random_scenario(rng, atoms, classes)
        normal = normalize(term)
        assert normalize(normal) == normal
        assert eval_term(term, graph, taxonomy) == eval_term(normal, graph, taxonomy)
        # inverse laws, checked extensionally
        inv = Inverse(term)
        flipped = {(b, a) for a, b in eval_term(term, graph, taxonomy)}
        assert set(eval_term(inv, graph, taxonomy)) == flipped
        assert eval_term(Inverse(inv), graph, taxonomy) == eval_term(term, graph, taxonomy)

    for _ in range(200):
        left = _random_term(rng, atoms, classes, depth=3)
        right = _random_term(rng, atoms, classes, depth=3)
        graph = _random_scenario(rng, atoms, classes)
        chain_inv = eval_term(Inverse(Chain(left, right)), graph, taxonomy)
        swapped = eval_term(Chain(Inverse(right), Inverse(left)), graph, taxonomy)
        assert chain_inv == swapped

    # brute-force reachability oracle vs transitive_reduction on random DAGs
    def closure(edges, nodes):
        reach = {n: {n} for n in nodes}
        changed = True
        while changed:
            changed = False
            for a, b in edges:
                grown = reach[a] | reach[b]
                if grown != reach[a]:
                    reach[a] = grown
                    changed = True
        return {(a, b) for a in nodes for b in reach[a] if a != b}

    for trial in range(200):
        dag_rng = random.Random(trial)
        count = dag_rng.randrange(2, 11)
        nodes = [f"n{i}" for i in range(count)]
        edges = {
            (nodes[i], nodes[j])
            for i in range(count)
            for j in range(i + 1, count)
            if dag_rng.random() < 0.3
        }
        reduced = transitive_reduction(sorted(edges))
        assert closure(reduced, nodes) == closure(edges, nodes)
        for edge in reduced:
            thinner = [e for e in reduced if e != edge]
            assert closure(thinner, nodes) != closure(reduced, nodes)

    assert time.monotonic() - started < 30.0


def test_rewrite_rule_cycle_violated_materialized_stable():
    bundle = load_bundle(FIXTURES / "ontologies")
    prefixes = PrefixMap(DEFAULT_PREFIXES)
    rules = parse_rules(
        (FIXTURES / "rules" / "molmod_alignment.rules").read_text(), prefixes
    )
    paradigmatic = [r for r in rules if "paradigmatic" in r.name]
    assert len(paradigmatic) == 1
    rule = paradigmatic[0]

    source = load_scenario(FIXTURES / "scenarios" / "molmod_source.ttl")
    before = check_rule(rule, source, bundle.taxonomy)
    assert not before.satisfied
    assert before.violated

    enriched, report = materialize(rule, source, bundle.taxonomy)
    assert report.created
    after = check_rule(rule, enriched, bundle.taxonomy)
    assert after.satisfied

    again, second = materialize(rule, enriched, bundle.taxonomy)
    assert not second.created
    assert again.store.triple_set() == enriched.store.triple_set()
    assert isomorphic(again.store, enriched.store)
    # the input graph was never mutated
    assert not check_rule(rule, source, bundle.taxonomy).satisfied


def test_tier_conformance_of_the_shipped_bundle_and_orphan_detection():
    bundle = load_bundle(FIXTURES / "ontologies")
    report = tier_check(bundle)
    assert report.violations == []

    orphan_ttl = (
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
        "@prefix ex: <https://example.org/orphan#> .\n"
        "ex:unanchored a owl:Class .\n"
    )
    stores = dict(bundle.stores)
    stores["orphans"] = parse_turtle(orphan_ttl)
    damaged = OntologyBundle(
        stores=stores,
        roles={**bundle.roles, "orphans": "marketplace"},
        taxonomy=build_taxonomy(list(stores.values())),
    )
    verdict = tier_check(damaged)
    assert len(verdict.violations) == 1
    assert verdict.violations[0]["class"] == "https://example.org/orphan#unanchored"


def test_spreadsheet_import_maps_every_edge_code():
    doc = (FIXTURES / "csv" / "csp_workflow.csv").read_text()
    colmap = {
        "columns": {
            "id": "Id",
            "kind": "Name",
            "text": "Text Area 1",
            "source": "Line Source",
            "target": "Line Destination",
            "label": "Text Area 1",
        },
        "nodeKind": "Process",
        "edgeKind": "Line",
        "namespace": "https://example.org/scenarios/csp#",
    }
    graph = import_csv(doc, colmap=colmap)
    assert len(graph.nodes) == 6
    assert len(graph.edges) == 5

    csp = "https://example.org/scenarios/csp#"
    emmo = {
        "property": "http://emmo.info/emmo/properties#has_property",
        "participant": "http://emmo.info/emmo/processual#has_proper_participant",
        "sign": "http://emmo.info/emmo/semiotics#has_sign",
        "part": "http://emmo.info/emmo/mereotopology#has_proper_part",
        "spatial": "http://emmo.info/emmo/mereotopology#has_spatial_part",
    }
    edges = {(s, p, o) for s, p, o in graph.edges}
    assert (csp + "CSP_WORKFLOW", emmo["participant"], csp + "ZEOLITE_SAMPLE") in edges
    assert (csp + "CSP_WORKFLOW", emmo["part"], csp + "ENERGY_MINIMIZATION") in edges
    assert (csp + "ZEOLITE_SAMPLE", emmo["property"], csp + "LATTICE_ENERGY") in edges
    assert (csp + "ZEOLITE_SAMPLE", emmo["sign"], csp + "STRUCTURE_REPORT") in edges
    assert (csp + "ZEOLITE_SAMPLE", emmo["spatial"], csp + "UNIT_CELL") in edges

    listing = export_class_list(graph)
    records = [line for line in listing.splitlines() if line.strip()]
    assert len(records) == len(graph.nodes)

    rows = list(csv.reader(io.StringIO(doc)))
    rows.append(["99", "Line", "7", "1", "2"])
    out = io.StringIO()
    csv.writer(out).writerows(rows)
    with pytest.raises(ScenarioError, match="7"):
        import_csv(out.getvalue(), colmap=colmap)

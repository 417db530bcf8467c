"""ABox scenario graphs: labeled individuals, edges, term evaluation.

A scenario graph is the assertional side of a store: individuals with
their class labels, object-property edges between individuals, and
literal attachments.  Schema-level triples (subclass and subproperty
assertions, equivalences, class and property declarations) never enter
a graph; :func:`from_triples` drops them so that re-emission via the
``store`` field reproduces exactly the assertional triples.

Class labels come in two views.  The raw view is what the document
asserts.  The inferred view closes raw labels upward through a taxonomy
and is what restriction terms and rule antecedents match against.

Evaluation (:func:`eval_term`) is purely extensional: a term denotes a
set of node pairs in one graph.  Atoms include every edge whose property
is a declared subproperty (or equivalent) of the atom.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass

from .namespaces import (
    DEFAULT_PREFIXES,
    OWL_CLASS,
    OWL_DATATYPE_PROPERTY,
    OWL_OBJECT_PROPERTY,
    OWL_EQUIVALENT_CLASS,
    OWL_EQUIVALENT_PROPERTY,
    RDFS_SUBCLASSOF,
    RDFS_SUBPROPERTYOF,
    RDF_TYPE,
    TOP,
)
from .taxonomy import Taxonomy, property_subsumes, subsumes
from .terms import (
    Atom,
    Chain,
    Intersection,
    Inverse,
    ObjectRestriction,
    PropertyTerm,
    SubjectRestriction,
)
from .turtle_io import BlankNode, Iri, Literal, PrefixMap, Term, TripleStore


class ScenarioError(ValueError):
    """Malformed scenario input (CSV rows, dangling references)."""


_TBOX_PREDICATES = {
    RDFS_SUBCLASSOF,
    RDFS_SUBPROPERTYOF,
    OWL_EQUIVALENT_CLASS,
    OWL_EQUIVALENT_PROPERTY,
}
_DECLARATION_OBJECTS = {OWL_CLASS, OWL_OBJECT_PROPERTY, OWL_DATATYPE_PROPERTY}


def node_ref(term: Term) -> str:
    """Stable string id for a node: the IRI, or `_:label` for blanks."""
    if isinstance(term, Iri):
        return term.value
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    raise TypeError(f"literals are not nodes: {term!r}")


def ref_term(ref: str) -> Iri | BlankNode:
    """Inverse of node_ref."""
    if ref.startswith("_:"):
        return BlankNode(ref[2:])
    return Iri(ref)


def local_name(ref: str) -> str:
    """Display name of a node ref: fragment, last path segment, or the ref."""
    if ref.startswith("_:"):
        return ref
    if "#" in ref:
        return ref.rsplit("#", 1)[1]
    return ref.rstrip("/").rsplit("/", 1)[-1]


@dataclass(frozen=True)
class ScenarioGraph:
    """Immutable ABox view of a triple store."""

    name: str
    store: TripleStore
    nodes: tuple[str, ...]
    labels: dict[str, tuple[str, ...]]
    edges: tuple[tuple[str, str, str], ...]
    literals: tuple[tuple[str, str, Literal], ...]

    def raw_labels(self, ref: str) -> tuple[str, ...]:
        return self.labels.get(ref, ())

    def inferred_labels(self, taxonomy: Taxonomy) -> dict[str, frozenset[str]]:
        """Per-node class labels closed upward through the taxonomy."""
        closed: dict[str, frozenset[str]] = {}
        for ref in self.nodes:
            acc: set[str] = set()
            for label in self.labels.get(ref, ()):
                acc.update(taxonomy.classes.ancestors(label))
            acc.discard(TOP)
            closed[ref] = frozenset(acc)
        return closed


def from_triples(store: TripleStore, taxonomy: Taxonomy | None = None, name: str = "scenario") -> ScenarioGraph:
    """Index the assertional triples of a store as a scenario graph.

    Schema triples are excluded; everything else is kept, so the graph's
    ``store`` holds exactly the ABox triple set in document order.
    """
    kept = []
    nodes: dict[str, None] = {}
    labels: dict[str, list[str]] = {}
    edges: list[tuple[str, str, str]] = []
    literals: list[tuple[str, str, Literal]] = []

    for s, p, o in store:
        if p.value in _TBOX_PREDICATES:
            continue
        if p.value == RDF_TYPE and isinstance(o, Iri) and o.value in _DECLARATION_OBJECTS:
            continue
        kept.append((s, p, o))
        subject = node_ref(s)
        nodes.setdefault(subject, None)
        if p.value == RDF_TYPE and isinstance(o, Iri):
            acc = labels.setdefault(subject, [])
            if o.value not in acc:
                acc.append(o.value)
        elif isinstance(o, Literal):
            literals.append((subject, p.value, o))
        else:
            target = node_ref(o)
            nodes.setdefault(target, None)
            edges.append((subject, p.value, target))

    abox = TripleStore(kept, prefixes=store.prefixes)
    return ScenarioGraph(
        name=name,
        store=abox,
        nodes=tuple(nodes),
        labels={ref: tuple(ls) for ref, ls in labels.items()},
        edges=tuple(edges),
        literals=tuple(literals),
    )


def instances_of(graph: ScenarioGraph, taxonomy: Taxonomy, class_iri: str) -> frozenset[str]:
    """Nodes whose inferred labels fall under the class; top matches all."""
    if class_iri == TOP:
        return frozenset(graph.nodes)
    result = {
        ref
        for ref in graph.nodes
        if any(subsumes(taxonomy, class_iri, label) for label in graph.labels.get(ref, ()))
    }
    return frozenset(result)


def eval_term(term: PropertyTerm, graph: ScenarioGraph, taxonomy: Taxonomy) -> frozenset[tuple[str, str]]:
    """Extension of a property term in one graph: a set of node pairs."""
    if isinstance(term, Atom):
        return frozenset(
            (s, o) for s, p, o in graph.edges if property_subsumes(taxonomy, term.iri, p)
        )
    if isinstance(term, Inverse):
        return frozenset((o, s) for s, o in eval_term(term.term, graph, taxonomy))
    if isinstance(term, Chain):
        left = eval_term(term.left, graph, taxonomy)
        right = eval_term(term.right, graph, taxonomy)
        by_source: dict[str, set[str]] = {}
        for mid, o in right:
            by_source.setdefault(mid, set()).add(o)
        return frozenset((s, o) for s, mid in left for o in by_source.get(mid, ()))
    if isinstance(term, Intersection):
        extents = [eval_term(m, graph, taxonomy) for m in term.members]
        return frozenset(set.intersection(*map(set, extents)))
    if isinstance(term, SubjectRestriction):
        subjects = instances_of(graph, taxonomy, term.class_iri)
        return frozenset((s, o) for s in subjects for o in graph.nodes)
    if isinstance(term, ObjectRestriction):
        objects = instances_of(graph, taxonomy, term.class_iri)
        return frozenset((s, o) for s in graph.nodes for o in objects)
    raise TypeError(f"not a property term: {term!r}")


DEFAULT_EDGE_CODES: dict[int, str] = {
    0: DEFAULT_PREFIXES["emmo-properties"] + "has_property",
    1: DEFAULT_PREFIXES["emmo-processual"] + "has_proper_participant",
    2: DEFAULT_PREFIXES["emmo-semiotics"] + "has_sign",
    3: DEFAULT_PREFIXES["emmo-mereotopology"] + "has_proper_part",
    4: DEFAULT_PREFIXES["emmo-mereotopology"] + "has_spatial_part",
}

_CSV_COLUMNS = ("id", "kind", "text", "source", "target", "label")
_NAME_PATTERN = re.compile(r"[A-Za-z0-9_.-]+\Z")


def import_csv(
    doc: str,
    codes: dict[int, str] | None = None,
    colmap: dict | None = None,
    name: str = "csv",
) -> ScenarioGraph:
    """Build a scenario graph from a flowchart CSV export.

    The canonical schema has columns id, kind, text, source, target,
    label.  Node rows (kind `node`) carry `name : Class1, Class2` in
    the text column; edge rows (kind `edge`) reference node row ids in
    source/target and a numeric relation code in label.  A column-map
    config adapts third-party exports:

        {"columns": {"id": "Id", "text": "Text Area 1", ...},
         "nodeKind": "shape", "edgeKind": "line",
         "namespace": "https://example.org/scenarios/csp#"}

    Same input bytes always produce the same graph; node IRIs are
    `namespace + name`.
    """
    codes = DEFAULT_EDGE_CODES if codes is None else codes
    config = colmap or {}
    columns = {key: config.get("columns", {}).get(key, key) for key in _CSV_COLUMNS}
    node_kind = config.get("nodeKind", "node")
    edge_kind = config.get("edgeKind", "edge")
    namespace = config.get("namespace", DEFAULT_PREFIXES["csp"])

    prefixes = PrefixMap(DEFAULT_PREFIXES)
    reader = csv.DictReader(io.StringIO(doc))
    rows = list(reader)
    if rows:
        missing = [columns[key] for key in ("id", "kind") if columns[key] not in rows[0]]
        if missing:
            raise ScenarioError(f"CSV is missing mapped columns: {', '.join(missing)}")

    def cell(row: dict, key: str, line: int, required: bool = False) -> str:
        value = (row.get(columns[key]) or "").strip()
        if required and not value:
            raise ScenarioError(f"row {line}: missing {key!r} value")
        return value

    by_id: dict[str, str] = {}
    triples = []
    node_rows: list[tuple[int, dict]] = []
    edge_rows: list[tuple[int, dict]] = []
    for line, row in enumerate(rows, start=2):
        kind = cell(row, "kind", line, required=True)
        if kind == node_kind:
            node_rows.append((line, row))
        elif kind == edge_kind:
            edge_rows.append((line, row))
        else:
            raise ScenarioError(f"row {line}: unknown kind {kind!r}")

    for line, row in node_rows:
        row_id = cell(row, "id", line, required=True)
        if row_id in by_id:
            raise ScenarioError(f"row {line}: duplicate node id {row_id!r}")
        text = cell(row, "text", line, required=True)
        node_name, _, class_text = text.partition(":")
        node_name = node_name.strip()
        if not _NAME_PATTERN.match(node_name):
            raise ScenarioError(f"row {line}: invalid node name {node_name!r}")
        iri = Iri(namespace + node_name)
        by_id[row_id] = iri.value
        for class_ref in filter(None, (c.strip() for c in class_text.split(","))):
            try:
                class_iri = prefixes.expand(class_ref) if ":" in class_ref else None
            except KeyError:
                class_iri = None
            if class_iri is None:
                raise ScenarioError(f"row {line}: unresolvable class {class_ref!r}")
            triples.append((iri, Iri(RDF_TYPE), Iri(class_iri)))

    for line, row in edge_rows:
        source = cell(row, "source", line, required=True)
        target = cell(row, "target", line, required=True)
        label = cell(row, "label", line, required=True)
        for endpoint in (source, target):
            if endpoint not in by_id:
                raise ScenarioError(f"row {line}: edge references unknown node id {endpoint!r}")
        try:
            code = int(label)
        except ValueError:
            raise ScenarioError(f"row {line}: edge label {label!r} is not a numeric code")
        if code not in codes:
            raise ScenarioError(f"row {line}: unknown edge code {code}")
        triples.append((Iri(by_id[source]), Iri(codes[code]), Iri(by_id[target])))

    store = TripleStore(triples, prefixes=prefixes)
    return from_triples(store, name=name)


def export_class_list(graph: ScenarioGraph, prefixes: PrefixMap | None = None) -> str:
    """One record per individual: `name :: class,... :: prop->target,...`.

    Records are sorted by name; classes and relations keep document
    order.  Classes and properties are written as prefixed names when
    the prefix map covers them, `<IRI>` otherwise.  Literal attachments
    are not part of the record grammar.
    """
    if prefixes is None:
        prefixes = PrefixMap(DEFAULT_PREFIXES)

    def compact(iri: str) -> str:
        short = prefixes.compact(iri)
        return short if short is not None else f"<{iri}>"

    outgoing: dict[str, list[tuple[str, str]]] = {}
    for s, p, o in graph.edges:
        outgoing.setdefault(s, []).append((p, o))

    lines = []
    for ref in sorted(graph.nodes, key=lambda r: (local_name(r), r)):
        classes = ",".join(compact(c) for c in graph.labels.get(ref, ()))
        relations = ",".join(
            f"{compact(p)}->{local_name(o)}" for p, o in outgoing.get(ref, ())
        )
        lines.append(f"{local_name(ref)} :: {classes} :: {relations}".rstrip())
    return "\n".join(lines) + ("\n" if lines else "")

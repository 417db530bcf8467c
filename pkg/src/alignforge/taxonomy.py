"""Subsumption lattices over classes and properties.

Asserted subclass/subproperty edges plus equivalence assertions are
collapsed into partitions (strongly connected components of the asserted
graph, with equivalences contributing edges both ways).  The partial
order lives on the quotient: two names subsume each other exactly when
they share a partition.

The class lattice carries a synthetic root above every parentless class,
so that subsumption questions across independently rooted ontologies
always have a defined answer.  Names never mentioned by any loaded
ontology act as singleton leaves directly below that root.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .namespaces import (
    OWL_CLASS,
    OWL_DATATYPE_PROPERTY,
    OWL_EQUIVALENT_CLASS,
    OWL_EQUIVALENT_PROPERTY,
    OWL_OBJECT_PROPERTY,
    RDFS_SUBCLASSOF,
    RDFS_SUBPROPERTYOF,
    RDF_TYPE,
    TOP,
)
from .turtle_io import Iri, PrefixMap, TripleStore, parse_turtle


class ModelError(ValueError):
    """Inconsistent ontology input (e.g. conflicting property kinds)."""


Edge = tuple[str, str]


def _components(nodes: set[str], out_edges: dict[str, set[str]]) -> dict[str, str]:
    """Map each node to the lexicographically smallest member of its SCC."""
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    rep: dict[str, str] = {}
    counter = 0

    for start in sorted(nodes):
        if start in index:
            continue
        work: list[tuple[str, list[str]]] = [(start, sorted(out_edges.get(start, ())))]
        index[start] = lowlink[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, successors = work[-1]
            advanced = False
            while successors:
                succ = successors.pop(0)
                if succ not in index:
                    index[succ] = lowlink[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, sorted(out_edges.get(succ, ()))))
                    advanced = True
                    break
                if succ in on_stack:
                    lowlink[node] = min(lowlink[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index[node]:
                component: list[str] = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                chosen = min(component)
                for member in component:
                    rep[member] = chosen
    return rep


def transitive_reduction(edges: list[Edge]) -> list[Edge]:
    """Minimal edge set with the same reachability as the input DAG.

    Raises ModelError if the input contains a cycle; equivalence cycles
    must be collapsed into partitions before reduction.
    """
    nodes: set[str] = set()
    adjacency: dict[str, set[str]] = {}
    for a, b in edges:
        nodes.update((a, b))
        adjacency.setdefault(a, set()).add(b)

    closure = {node: _reachable(node, adjacency) for node in nodes}
    for node in nodes:
        if any(node in closure[succ] for succ in adjacency.get(node, ())):
            raise ModelError(f"cycle through {node}; collapse equivalences first")

    kept: list[Edge] = []
    for a, b in sorted(set(edges)):
        if a == b:
            continue
        redundant = any(
            w != b and b in closure[w] for w in adjacency[a]
        )
        if not redundant:
            kept.append((a, b))
    return kept


def _reachable(start: str, adjacency: dict[str, set[str]]) -> set[str]:
    seen = {start}
    frontier = [start]
    while frontier:
        node = frontier.pop()
        for succ in adjacency.get(node, ()):
            if succ not in seen:
                seen.add(succ)
                frontier.append(succ)
    return seen


class Lattice:
    """Quotient partial order over one vocabulary of names."""

    def __init__(self, edges: list[Edge], equivalences: list[Edge], extra_nodes: set[str] | None = None) -> None:
        nodes: set[str] = set(extra_nodes or ())
        out_edges: dict[str, set[str]] = {}
        for a, b in edges:
            nodes.update((a, b))
            out_edges.setdefault(a, set()).add(b)
        for a, b in equivalences:
            nodes.update((a, b))
            out_edges.setdefault(a, set()).add(b)
            out_edges.setdefault(b, set()).add(a)

        self._rep = _components(nodes, out_edges)
        members: dict[str, list[str]] = {}
        for node, rep in self._rep.items():
            members.setdefault(rep, []).append(node)
        self._members = {rep: tuple(sorted(ms)) for rep, ms in members.items()}

        quotient: dict[str, set[str]] = {rep: set() for rep in self._members}
        for a, b in edges:
            ra, rb = self._rep[a], self._rep[b]
            if ra != rb:
                quotient[ra].add(rb)
        self._ancestors = {rep: frozenset(_reachable(rep, quotient)) for rep in quotient}
        reduced = transitive_reduction(
            [(a, b) for a, succs in quotient.items() for b in succs]
        )
        self._parents: dict[str, set[str]] = {rep: set() for rep in self._members}
        self._children: dict[str, set[str]] = {rep: set() for rep in self._members}
        for a, b in reduced:
            self._parents[a].add(b)
            self._children[b].add(a)

    def known(self, name: str) -> bool:
        return name in self._rep

    def rep(self, name: str) -> str:
        return self._rep[name]

    def partition(self, name: str) -> tuple[str, ...]:
        if name not in self._rep:
            return (name,)
        return self._members[self._rep[name]]

    def leq(self, sub: str, super_: str) -> bool:
        """True iff sub is subsumed by super in this lattice."""
        if sub == super_:
            return True
        if sub not in self._rep or super_ not in self._rep:
            return False
        return self._rep[super_] in self._ancestors[self._rep[sub]]

    def ancestors(self, name: str) -> set[str]:
        """All names subsuming this one (reflexive, full partitions)."""
        if name not in self._rep:
            return {name}
        result: set[str] = set()
        for rep in self._ancestors[self._rep[name]]:
            result.update(self._members[rep])
        return result

    def ups(self, name: str) -> list[str]:
        """Reduction-level parents, one representative per partition."""
        if name not in self._rep:
            return []
        return sorted(self._parents[self._rep[name]])

    def downs(self, name: str) -> list[str]:
        if name not in self._rep:
            return []
        return sorted(self._children[self._rep[name]])

    def roots(self) -> list[str]:
        return sorted(rep for rep, parents in self._parents.items() if not parents)

    def names(self) -> list[str]:
        return sorted(self._rep)

    def has_descendants(self, name: str) -> bool:
        if name not in self._rep:
            return False
        return bool(self._children[self._rep[name]])

    def reduced_edges(self) -> list[Edge]:
        """Transitive-reduction edges between partition representatives."""
        return sorted((a, b) for a, parents in self._parents.items() for b in parents)

    def closure_edges(self) -> list[Edge]:
        """All strict subsumption edges between partition representatives."""
        return sorted(
            (a, b)
            for a, ancestors in self._ancestors.items()
            for b in ancestors
            if b != a
        )

    def partitions(self) -> list[tuple[str, ...]]:
        """Every equivalence partition with more than one member."""
        return sorted(ms for ms in self._members.values() if len(ms) > 1)


@dataclass
class Taxonomy:
    """Merged subsumption structure of a set of ontology stores."""

    classes: Lattice
    object_properties: Lattice
    datatype_properties: Lattice
    property_kinds: dict[str, str]
    class_edges: list[Edge] = field(default_factory=list)
    class_equivalences: list[Edge] = field(default_factory=list)
    property_edges: list[Edge] = field(default_factory=list)
    property_equivalences: list[Edge] = field(default_factory=list)

    def property_kind(self, iri: str) -> str:
        return self.property_kinds.get(iri, "object")

    def property_lattice(self, iri: str) -> Lattice:
        if self.property_kind(iri) == "datatype":
            return self.datatype_properties
        return self.object_properties


def build_taxonomy(stores: list[TripleStore]) -> Taxonomy:
    """Collect subclass/subproperty structure from the given stores."""
    class_edges: list[Edge] = []
    class_equiv: list[Edge] = []
    prop_edges: list[Edge] = []
    prop_equiv: list[Edge] = []
    declared_classes: set[str] = set()
    kinds: dict[str, str] = {}

    for store in stores:
        for s, p, o in store:
            if not isinstance(s, Iri) or not isinstance(o, Iri):
                continue
            if p.value == RDFS_SUBCLASSOF:
                class_edges.append((s.value, o.value))
            elif p.value == OWL_EQUIVALENT_CLASS:
                class_equiv.append((s.value, o.value))
            elif p.value == RDFS_SUBPROPERTYOF:
                prop_edges.append((s.value, o.value))
            elif p.value == OWL_EQUIVALENT_PROPERTY:
                prop_equiv.append((s.value, o.value))
            elif p.value == RDF_TYPE and o.value == OWL_CLASS:
                declared_classes.add(s.value)
            elif p.value == RDF_TYPE and o.value == OWL_OBJECT_PROPERTY:
                _set_kind(kinds, s.value, "object")
            elif p.value == RDF_TYPE and o.value == OWL_DATATYPE_PROPERTY:
                _set_kind(kinds, s.value, "datatype")

    return _assemble(class_edges, class_equiv, prop_edges, prop_equiv, kinds, declared_classes)


def _set_kind(kinds: dict[str, str], iri: str, kind: str) -> None:
    if kinds.get(iri, kind) != kind:
        raise ModelError(f"{iri} declared as both object and datatype property")
    kinds[iri] = kind


def _assemble(
    class_edges: list[Edge],
    class_equiv: list[Edge],
    prop_edges: list[Edge],
    prop_equiv: list[Edge],
    kinds: dict[str, str],
    declared_classes: set[str] | None = None,
) -> Taxonomy:
    base = Lattice(class_edges, class_equiv, extra_nodes=declared_classes)
    rooted = [root for root in base.roots() if root != TOP]
    with_top = class_edges + [(root, TOP) for root in rooted]
    classes = Lattice(with_top, class_equiv, extra_nodes=(declared_classes or set()) | {TOP})

    # Kind constraints flow along subproperty and equivalence assertions;
    # undeclared properties connected to a datatype property inherit that
    # kind, and a conflict is an error.
    neighbor_map: dict[str, set[str]] = {}
    for a, b in prop_edges + prop_equiv:
        neighbor_map.setdefault(a, set()).add(b)
        neighbor_map.setdefault(b, set()).add(a)
    frontier = [iri for iri in kinds]
    while frontier:
        iri = frontier.pop()
        for other in neighbor_map.get(iri, ()):
            if other not in kinds:
                kinds[other] = kinds[iri]
                frontier.append(other)
            elif kinds[other] != kinds[iri]:
                raise ModelError(
                    f"subproperty link between object and datatype properties: {iri}, {other}"
                )

    def select(kind: str) -> tuple[list[Edge], list[Edge], set[str]]:
        edges = [(a, b) for a, b in prop_edges if kinds.get(a, "object") == kind]
        equiv = [(a, b) for a, b in prop_equiv if kinds.get(a, "object") == kind]
        nodes = {iri for iri, k in kinds.items() if k == kind}
        return edges, equiv, nodes

    obj_edges, obj_equiv, obj_nodes = select("object")
    dt_edges, dt_equiv, dt_nodes = select("datatype")
    return Taxonomy(
        classes=classes,
        object_properties=Lattice(obj_edges, obj_equiv, extra_nodes=obj_nodes),
        datatype_properties=Lattice(dt_edges, dt_equiv, extra_nodes=dt_nodes),
        property_kinds=kinds,
        class_edges=class_edges,
        class_equivalences=class_equiv,
        property_edges=prop_edges,
        property_equivalences=prop_equiv,
    )


def augment(
    taxonomy: Taxonomy,
    class_edges: list[Edge] = (),
    class_equivalences: list[Edge] = (),
    property_edges: list[Edge] = (),
    property_equivalences: list[Edge] = (),
) -> Taxonomy:
    """New taxonomy with additional asserted edges (e.g. accepted alignment)."""
    return _assemble(
        taxonomy.class_edges + list(class_edges),
        taxonomy.class_equivalences + list(class_equivalences),
        taxonomy.property_edges + list(property_edges),
        taxonomy.property_equivalences + list(property_equivalences),
        dict(taxonomy.property_kinds),
    )


def subsumes(taxonomy: Taxonomy, super_: str, sub: str) -> bool:
    """True iff the class sub is subsumed by the class super.

    Reflexive; the synthetic top subsumes everything; names unknown to
    the loaded ontologies are singleton leaves below top.
    """
    if super_ == sub or super_ == TOP:
        return True
    return taxonomy.classes.leq(sub, super_)


def property_subsumes(taxonomy: Taxonomy, super_: str, sub: str) -> bool:
    """True iff property sub is subsumed by property super (same kind)."""
    if taxonomy.property_kind(super_) != taxonomy.property_kind(sub):
        return False
    if super_ == sub:
        return True
    return taxonomy.property_lattice(sub).leq(sub, super_)


def neighbors(taxonomy: Taxonomy, ref: str, direction: str) -> list[str]:
    """Reduction-level neighbor representatives of a class or property."""
    if direction not in ("up", "down"):
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    for lattice in (taxonomy.classes, taxonomy.object_properties, taxonomy.datatype_properties):
        if lattice.known(ref):
            return lattice.ups(ref) if direction == "up" else lattice.downs(ref)
    # Unknown name: a singleton leaf directly below the class top.
    return [TOP] if direction == "up" else []


@dataclass
class OntologyBundle:
    """Named ontology stores with per-store roles and a merged taxonomy."""

    stores: dict[str, TripleStore]
    roles: dict[str, str]
    taxonomy: Taxonomy

    def merged_prefixes(self) -> PrefixMap:
        merged = PrefixMap()
        for store in self.stores.values():
            for label, base in store.prefixes.items():
                merged.bind(label, base)
        return merged

    def stores_with_role(self, role: str) -> dict[str, TripleStore]:
        return {name: s for name, s in self.stores.items() if self.roles.get(name) == role}


def load_bundle(directory: str | Path, names: list[str] | None = None) -> OntologyBundle:
    """Load every .ttl file in a directory (or a named subset) as a bundle.

    An optional bundle.json beside the files assigns per-store roles;
    stores without an entry default to the marketplace role.
    """
    directory = Path(directory)
    roles: dict[str, str] = {}
    manifest = directory / "bundle.json"
    if manifest.exists():
        roles = json.loads(manifest.read_text()).get("roles", {})
    stores: dict[str, TripleStore] = {}
    for path in sorted(directory.glob("*.ttl")):
        name = path.stem
        if names is not None and name not in names:
            continue
        stores[name] = parse_turtle(path.read_text())
    if names is not None:
        missing = [n for n in names if n not in stores]
        if missing:
            raise FileNotFoundError(f"bundle stores not found in {directory}: {missing}")
    taxonomy = build_taxonomy(list(stores.values()))
    return OntologyBundle(
        stores=stores,
        roles={name: roles.get(name, "marketplace") for name in stores},
        taxonomy=taxonomy,
    )

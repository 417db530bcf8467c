"""Graph rewrite rules for correspondences that OWL axioms cannot carry.

A rule has an antecedent of edge/type atoms over `?`-variables and an
existential consequent: fresh-variable declarations plus required edges.

    rule shared_model {
      when {
        edge(?x, vov:involves, ?y);
        type(?x, osmo:materials_relation);
      }
      ensure {
        fresh ?m : emmo-models:model;
        edge(?m, emmo-mereotopology:has_proper_part, ?x);
      }
    }

Checking enumerates all antecedent bindings (type atoms match inferred
labels, edge atoms match by declared subsumption) and asks, per binding,
whether existing nodes can serve as witnesses for the fresh variables.
Materialization adds deterministic skolem individuals for the violated
bindings only, so applying a rule twice never duplicates anything.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .scenario import ScenarioGraph, from_triples, instances_of, ref_term
from .taxonomy import Taxonomy, property_subsumes, subsumes
from .turtle_io import Iri, PrefixMap, Triple
from .namespaces import RDF_TYPE


class RuleSyntaxError(ValueError):
    """Malformed rule text; carries a line number."""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class EdgeAtom:
    subject: str
    property_iri: str
    object: str


@dataclass(frozen=True)
class TypeAtom:
    subject: str
    class_iri: str


@dataclass(frozen=True)
class FreshDecl:
    variable: str
    class_iri: str | None


@dataclass(frozen=True)
class RewriteRule:
    name: str
    antecedent: tuple[EdgeAtom | TypeAtom, ...]
    fresh: tuple[FreshDecl, ...]
    consequent_edges: tuple[EdgeAtom, ...]

    def antecedent_variables(self) -> list[str]:
        seen: dict[str, None] = {}
        for atom in self.antecedent:
            seen.setdefault(atom.subject, None)
            if isinstance(atom, EdgeAtom):
                seen.setdefault(atom.object, None)
        return list(seen)


Binding = dict[str, str]


@dataclass
class MatchResult:
    rule: RewriteRule
    bindings: list[Binding] = field(default_factory=list)
    violated: list[Binding] = field(default_factory=list)

    @property
    def satisfied(self) -> bool:
        return not self.violated


@dataclass
class MaterializeReport:
    rule: RewriteRule
    created: list[tuple[Binding, dict[str, str]]] = field(default_factory=list)

    @property
    def created_nodes(self) -> list[str]:
        return [ref for _, skolems in self.created for ref in skolems.values()]


class _RuleParser:
    def __init__(self, text: str, prefixes: PrefixMap) -> None:
        self.text = text
        self.pos = 0
        self.line = 1
        self.prefixes = prefixes

    def error(self, message: str) -> RuleSyntaxError:
        return RuleSyntaxError(message, self.line)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self) -> str:
        char = self.text[self.pos]
        self.pos += 1
        if char == "\n":
            self.line += 1
        return char

    def skip_ws(self) -> None:
        while self.pos < len(self.text):
            char = self.peek()
            if char in " \t\r\n":
                self.advance()
            elif char == "#":
                while self.pos < len(self.text) and self.peek() != "\n":
                    self.advance()
            else:
                return

    def expect(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            found = self.peek() or "end of input"
            raise self.error(f"expected {token!r}, found {found!r}")
        for _ in token:
            self.advance()

    def at(self, token: str) -> bool:
        self.skip_ws()
        return self.text.startswith(token, self.pos)

    def take_name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.peek() and (self.peek().isalnum() or self.peek() in "_.:-"):
            self.advance()
        name = self.text[start:self.pos]
        if not name:
            raise self.error("expected a name")
        return name

    def take_variable(self) -> str:
        self.expect("?")
        return "?" + self.take_name()

    def take_iri(self) -> str:
        self.skip_ws()
        if self.peek() == "<":
            self.advance()
            start = self.pos
            while self.peek() not in (">", ""):
                self.advance()
            value = self.text[start:self.pos]
            self.expect(">")
            return value
        name = self.take_name()
        if ":" not in name:
            raise self.error(f"{name!r} is not a prefixed name")
        try:
            return self.prefixes.expand(name)
        except KeyError:
            raise self.error(f"unknown prefix in {name!r}")

    def parse_document(self) -> list[RewriteRule]:
        rules = []
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                return rules
            rules.append(self.parse_rule())

    def parse_rule(self) -> RewriteRule:
        self.expect("rule")
        name = self.take_name()
        self.expect("{")
        self.expect("when")
        self.expect("{")
        antecedent: list[EdgeAtom | TypeAtom] = []
        while not self.at("}"):
            antecedent.append(self.parse_when_atom())
        self.expect("}")
        self.expect("ensure")
        self.expect("{")
        fresh: list[FreshDecl] = []
        edges: list[EdgeAtom] = []
        while not self.at("}"):
            if self.at("fresh"):
                fresh.append(self.parse_fresh())
            else:
                edges.append(self.parse_edge_atom())
        self.expect("}")
        self.expect("}")
        if not antecedent:
            raise self.error(f"rule {name}: antecedent must not be empty")
        bound = set()
        for atom in antecedent:
            bound.add(atom.subject)
            if isinstance(atom, EdgeAtom):
                bound.add(atom.object)
        bound.update(decl.variable for decl in fresh)
        for edge in edges:
            for var in (edge.subject, edge.object):
                if var not in bound:
                    raise self.error(f"rule {name}: variable {var} is neither bound nor fresh")
        return RewriteRule(name, tuple(antecedent), tuple(fresh), tuple(edges))

    def parse_when_atom(self) -> EdgeAtom | TypeAtom:
        self.skip_ws()
        if self.at("edge"):
            return self.parse_edge_atom()
        if self.at("type"):
            self.expect("type")
            self.expect("(")
            var = self.take_variable()
            self.expect(",")
            class_iri = self.take_iri()
            self.expect(")")
            self.expect(";")
            return TypeAtom(var, class_iri)
        raise self.error("expected an edge(...) or type(...) atom")

    def parse_edge_atom(self) -> EdgeAtom:
        self.expect("edge")
        self.expect("(")
        subject = self.take_variable()
        self.expect(",")
        prop = self.take_iri()
        self.expect(",")
        obj = self.take_variable()
        self.expect(")")
        self.expect(";")
        return EdgeAtom(subject, prop, obj)

    def parse_fresh(self) -> FreshDecl:
        self.expect("fresh")
        var = self.take_variable()
        class_iri = None
        if self.at(":"):
            self.expect(":")
            class_iri = self.take_iri()
        self.expect(";")
        return FreshDecl(var, class_iri)


def parse_rules(doc: str, prefixes: PrefixMap) -> list[RewriteRule]:
    """Parse a rule document; empty input yields an empty list."""
    return _RuleParser(doc, prefixes).parse_document()


def rule_text(rules: list[RewriteRule], prefixes: PrefixMap | None = None) -> str:
    """Deterministic textual form accepted back by parse_rules."""

    def name(iri: str) -> str:
        if prefixes is not None:
            compact = prefixes.compact(iri)
            if compact is not None:
                return compact
        return f"<{iri}>"

    blocks = []
    for rule in rules:
        lines = [f"rule {rule.name} {{", "  when {"]
        for atom in rule.antecedent:
            if isinstance(atom, EdgeAtom):
                lines.append(f"    edge({atom.subject}, {name(atom.property_iri)}, {atom.object});")
            else:
                lines.append(f"    type({atom.subject}, {name(atom.class_iri)});")
        lines.append("  }")
        lines.append("  ensure {")
        for decl in rule.fresh:
            if decl.class_iri is None:
                lines.append(f"    fresh {decl.variable};")
            else:
                lines.append(f"    fresh {decl.variable} : {name(decl.class_iri)};")
        for edge in rule.consequent_edges:
            lines.append(f"    edge({edge.subject}, {name(edge.property_iri)}, {edge.object});")
        lines.append("  }")
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def _enumerate_bindings(rule: RewriteRule, graph: ScenarioGraph, taxonomy: Taxonomy) -> list[Binding]:
    inferred = graph.inferred_labels(taxonomy)

    def extend(binding: Binding, atoms: list[EdgeAtom | TypeAtom]) -> list[Binding]:
        if not atoms:
            return [binding]
        atom, rest = atoms[0], atoms[1:]
        results: list[Binding] = []
        if isinstance(atom, TypeAtom):
            if atom.subject in binding:
                node = binding[atom.subject]
                if any(subsumes(taxonomy, atom.class_iri, lb) for lb in inferred.get(node, ())):
                    results.extend(extend(binding, rest))
            else:
                for node in instances_of(graph, taxonomy, atom.class_iri):
                    results.extend(extend({**binding, atom.subject: node}, rest))
        else:
            for s, p, o in graph.edges:
                if not property_subsumes(taxonomy, atom.property_iri, p):
                    continue
                if binding.get(atom.subject, s) != s or binding.get(atom.object, o) != o:
                    continue
                if atom.subject == atom.object and s != o:
                    continue
                results.extend(extend({**binding, atom.subject: s, atom.object: o}, rest))
        return results

    bindings = extend({}, list(rule.antecedent))
    variables = rule.antecedent_variables()
    unique: dict[tuple, Binding] = {}
    for b in bindings:
        unique.setdefault(tuple(b[v] for v in variables), b)
    return [unique[key] for key in sorted(unique)]


def _consequent_holds(rule: RewriteRule, binding: Binding, graph: ScenarioGraph, taxonomy: Taxonomy) -> bool:
    """Can existing nodes serve as witnesses for the fresh variables?"""
    edge_index: dict[str, set[tuple[str, str]]] = {}
    for s, p, o in graph.edges:
        edge_index.setdefault(p, set()).add((s, o))

    def edge_present(s: str, prop: str, o: str) -> bool:
        return any(
            (s, o) in pairs
            for p, pairs in edge_index.items()
            if property_subsumes(taxonomy, prop, p)
        )

    def assign(decls: list[FreshDecl], witness: Binding) -> bool:
        if not decls:
            resolved = {**binding, **witness}
            return all(
                edge_present(resolved[e.subject], e.property_iri, resolved[e.object])
                for e in rule.consequent_edges
            )
        decl, rest = decls[0], decls[1:]
        candidates = (
            instances_of(graph, taxonomy, decl.class_iri)
            if decl.class_iri is not None
            else graph.nodes
        )
        return any(assign(rest, {**witness, decl.variable: node}) for node in sorted(candidates))

    return assign(list(rule.fresh), {})


def check(rule: RewriteRule, graph: ScenarioGraph, taxonomy: Taxonomy) -> MatchResult:
    """Per-binding existential check of the rule on one graph."""
    result = MatchResult(rule)
    for binding in _enumerate_bindings(rule, graph, taxonomy):
        result.bindings.append(binding)
        if not _consequent_holds(rule, binding, graph, taxonomy):
            result.violated.append(binding)
    return result


def _skolem_ref(rule_name: str, binding: Binding, variable: str) -> str:
    canonical = "|".join(f"{var}={binding[var]}" for var in sorted(binding)) + f"|{variable}"
    digest = hashlib.md5(canonical.encode()).hexdigest()[:10]
    return f"_:sk_{rule_name}_{digest}"


def materialize(
    rule: RewriteRule, graph: ScenarioGraph, taxonomy: Taxonomy
) -> tuple[ScenarioGraph, MaterializeReport]:
    """Add skolem witnesses for every violated binding; no-op when satisfied."""
    report = MaterializeReport(rule)
    result = check(rule, graph, taxonomy)
    if result.satisfied:
        return graph, report

    new_triples: list[Triple] = []
    for binding in result.violated:
        skolems = {
            decl.variable: _skolem_ref(rule.name, binding, decl.variable)
            for decl in rule.fresh
        }
        for decl in rule.fresh:
            if decl.class_iri is not None:
                new_triples.append(
                    (ref_term(skolems[decl.variable]), Iri(RDF_TYPE), Iri(decl.class_iri))
                )
        resolved = {**binding, **skolems}
        for edge in rule.consequent_edges:
            new_triples.append(
                (ref_term(resolved[edge.subject]), Iri(edge.property_iri), ref_term(resolved[edge.object]))
            )
        report.created.append((binding, skolems))

    new_store = graph.store.with_triples(new_triples)
    return from_triples(new_store, name=graph.name), report

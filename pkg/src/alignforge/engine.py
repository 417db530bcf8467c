"""Correspondence construction: candidates, validity, moves, alignment.

The workflow mirrors how a human aligns two ontologies that annotate the
same scenario twice:

1. candidates are read off the shared individuals (class candidates) and
   a hint file (property candidates), each a tuple (sigma, tau, op);
2. every candidate gets a three-part validity verdict: logical (lattice
   derivability), structural (sound term-level subsumption), and
   extensional (instance containment across the loaded scenario pairs);
3. relaxation moves weaken an invalid candidate (generalize tau, refine
   sigma), strengthening moves tighten a valid one (generalize sigma,
   refine tau, upgrade to an equivalence);
4. accepted correspondences either fit a single OWL axiom or, when a
   term is composite, become a graph rewrite rule.

Support-direction convention: sigma always denotes a source-ontology
term and is evaluated on source-side graphs; tau on target-side graphs.
A supersumed candidate is canonicalized to subsumed with the terms
swapped at entry, so only two operators survive internally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

from .namespaces import TOP
from .rules import EdgeAtom, FreshDecl, RewriteRule, TypeAtom
from .scenario import ScenarioGraph, eval_term, instances_of, local_name
from .taxonomy import OntologyBundle, Taxonomy, augment, build_taxonomy, subsumes
from .terms import (
    Atom,
    Chain,
    Intersection,
    Inverse,
    ObjectRestriction,
    PropertyTerm,
    SubjectRestriction,
    normalize,
    parse_term,
    structural_subsumption,
    term_text,
)
from .turtle_io import Iri, PrefixMap, TripleStore

SUBSUMED = "subsumed"
SUPERSUMED = "supersumed"
EQUIVALENT = "equivalent"

RELAX_MOVES = ("tau-generalization", "sigma-refinement")
STRENGTHEN_MOVES = ("sigma-generalization", "tau-refinement", "identification")


class EngineError(ValueError):
    """Illegal decision or transition in the alignment workflow."""


CorrespondenceTerm = str | PropertyTerm


@dataclass(frozen=True)
class Move:
    kind: str
    before: CorrespondenceTerm
    after: CorrespondenceTerm


@dataclass
class Correspondence:
    id: int
    kind: str  # "class" | "property"
    sigma: CorrespondenceTerm
    tau: CorrespondenceTerm
    op: str = SUBSUMED
    status: str = "candidate"
    confidence: float | None = None
    history: list[Move] = field(default_factory=list)
    provenance: str = ""
    reason: str | None = None

    def terminal(self) -> bool:
        return self.status in ("accepted", "discarded")


@dataclass
class ValidityReport:
    logical: str  # "derivable" | "not-derivable"
    structural: str  # "yes" | "unknown"
    extensional: str  # "consistent" | "counterexample"
    counterexamples: list[dict] = field(default_factory=list)
    vacuous: bool = False
    trivial: bool = False
    trivial_reason: str | None = None


@dataclass
class Proposal:
    move: Move
    validity: ValidityReport


@dataclass
class AlignmentEntry:
    kind: str
    sigma: CorrespondenceTerm
    tau: CorrespondenceTerm
    op: str
    correspondence_ids: list[int]
    expressibility: str  # "owl" | "rule" | "rejected"
    owl_kind: str | None = None
    rule_name: str | None = None
    reject_reason: str | None = None


@dataclass
class AlignmentSet:
    source_id: str
    target_id: str
    entries: list[AlignmentEntry] = field(default_factory=list)

    def find(self, kind: str, sigma: CorrespondenceTerm, tau: CorrespondenceTerm) -> AlignmentEntry | None:
        key = _entry_key(kind, sigma, tau)
        for entry in self.entries:
            if _entry_key(entry.kind, entry.sigma, entry.tau) == key:
                return entry
        return None


def _entry_key(kind: str, sigma: CorrespondenceTerm, tau: CorrespondenceTerm):
    def norm(term: CorrespondenceTerm):
        return term if isinstance(term, str) else normalize(term)

    return (kind, norm(sigma), norm(tau))


def parse_hints(text: str, prefixes: PrefixMap) -> list[tuple[PropertyTerm, PropertyTerm, str]]:
    """Parse `sigma-term => tau-term` lines; # starts a comment."""
    hints = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=>" not in line:
            raise EngineError(f"hint line {number}: expected 'sigma => tau'")
        left, right = line.split("=>", 1)
        hints.append((parse_term(left.strip(), prefixes), parse_term(right.strip(), prefixes), line))
    return hints


class AlignmentSession:
    """Single-writer state for one alignment sitting."""

    def __init__(
        self,
        bundle: OntologyBundle,
        source: ScenarioGraph,
        target: ScenarioGraph,
        hints: list[tuple[PropertyTerm, PropertyTerm, str]] | None = None,
        source_id: str = "source",
        target_id: str = "target",
    ) -> None:
        self.bundle = bundle
        self.pairs: list[tuple[ScenarioGraph, ScenarioGraph]] = [(source, target)]
        self.hints = hints or []
        self.base_taxonomy = bundle.taxonomy
        self.taxonomy = bundle.taxonomy
        self.warnings: list[str] = []
        self.alignment = AlignmentSet(source_id, target_id)
        self.correspondences: dict[int, Correspondence] = {}
        for corr in generate_candidates(source, target, self.hints, self.warnings):
            self.correspondences[corr.id] = corr

    @property
    def source(self) -> ScenarioGraph:
        return self.pairs[0][0]

    @property
    def target(self) -> ScenarioGraph:
        return self.pairs[0][1]

    def correspondence(self, cid: int) -> Correspondence:
        if cid not in self.correspondences:
            raise KeyError(f"no candidate {cid}")
        return self.correspondences[cid]

    # -- validity ----------------------------------------------------

    def check_validity(self, corr: Correspondence) -> ValidityReport:
        forward = self._directional(corr.sigma, corr.tau, corr.kind)
        if corr.op == EQUIVALENT:
            backward = self._directional(corr.tau, corr.sigma, corr.kind, reverse=True)
            report = ValidityReport(
                logical="derivable" if forward.logical == backward.logical == "derivable" else "not-derivable",
                structural="yes" if forward.structural == backward.structural == "yes" else "unknown",
                extensional="consistent"
                if forward.extensional == backward.extensional == "consistent"
                else "counterexample",
                counterexamples=forward.counterexamples + backward.counterexamples,
                vacuous=forward.vacuous and backward.vacuous,
            )
        else:
            report = forward
        self._flag_trivial(corr, report)
        return report

    def _directional(
        self, sub: CorrespondenceTerm, super_: CorrespondenceTerm, kind: str, reverse: bool = False
    ) -> ValidityReport:
        """Verdicts for sub ⊑ super.  sigma terms live on the source side,
        tau terms on the target side, so a reversed check swaps the graphs
        the two terms are evaluated on, not the terms themselves."""
        logical = "derivable" if self._derivable(sub, super_, kind, self.taxonomy) else "not-derivable"
        structural = self._structural(sub, super_, kind, self.base_taxonomy)
        counterexamples: list[dict] = []
        any_evidence = False
        for source, target in self.pairs:
            sub_graph, super_graph = (target, source) if reverse else (source, target)
            if kind == "class":
                sub_ext: set = set(instances_of(sub_graph, self.taxonomy, sub))
                super_ext: set = set(instances_of(super_graph, self.taxonomy, super_))
            else:
                sub_ext = set(eval_term(sub, sub_graph, self.taxonomy))
                super_ext = set(eval_term(super_, super_graph, self.taxonomy))
            if sub_ext:
                any_evidence = True
            for item in sorted(sub_ext - super_ext):
                counterexamples.append(
                    {
                        "scenario": f"{sub_graph.name}->{super_graph.name}",
                        "item": list(item) if isinstance(item, tuple) else [item],
                    }
                )
        return ValidityReport(
            logical=logical,
            structural=structural,
            extensional="consistent" if not counterexamples else "counterexample",
            counterexamples=counterexamples,
            vacuous=not any_evidence,
        )

    def _derivable(self, sub, super_, kind, taxonomy: Taxonomy) -> bool:
        return self._structural(sub, super_, kind, taxonomy) == "yes"

    def _structural(self, sub, super_, kind, taxonomy: Taxonomy) -> str:
        if kind == "class":
            return "yes" if subsumes(taxonomy, super_, sub) else "unknown"
        return structural_subsumption(taxonomy, sub, super_)

    def _flag_trivial(self, corr: Correspondence, report: ValidityReport) -> None:
        if corr.kind == "class" and corr.tau == TOP:
            report.trivial = True
            report.trivial_reason = "target term is the universal class"
            return
        if self.pairs and self._sigma_vacuous(corr):
            report.trivial = True
            report.trivial_reason = "source term has no instances and no subterms in the fixtures"
            return
        if report.logical == "derivable" and self._redundant(corr):
            report.trivial = True
            report.trivial_reason = "already derivable from the ontologies and accepted correspondences"

    def _sigma_vacuous(self, corr: Correspondence) -> bool:
        populated = False
        for source, _ in self.pairs:
            if corr.kind == "class":
                if instances_of(source, self.taxonomy, corr.sigma):
                    populated = True
            elif eval_term(corr.sigma, source, self.taxonomy):
                populated = True
        if populated:
            return False
        if corr.kind == "class":
            return not self.taxonomy.classes.has_descendants(corr.sigma)
        if isinstance(corr.sigma, Atom):
            return not self.taxonomy.property_lattice(corr.sigma.iri).has_descendants(corr.sigma.iri)
        return True

    def _redundant(self, corr: Correspondence) -> bool:
        """Derivability caused by a term-equal accepted entry is a merge,
        not a redundancy; anything else derivable adds nothing."""
        entry = self.alignment.find(corr.kind, corr.sigma, corr.tau)
        if entry is not None and (entry.op == corr.op or entry.op == EQUIVALENT):
            return False
        return True

    # -- proposals ---------------------------------------------------

    def propose_moves(self, corr: Correspondence, phase: str) -> list[Proposal]:
        if phase not in ("relax", "strengthen"):
            raise EngineError(f"phase must be 'relax' or 'strengthen', got {phase!r}")
        if corr.status == "discarded":
            raise EngineError(f"candidate {corr.id} is discarded")
        if corr.status == "accepted":
            return []
        moves: list[Move] = []
        if phase == "relax":
            for general in self._ups(corr.tau, corr.kind):
                moves.append(Move("tau-generalization", corr.tau, general))
            for special in self._downs(corr.sigma, corr.kind):
                moves.append(Move("sigma-refinement", corr.sigma, special))
            if corr.kind == "property":
                for template in self._restriction_templates(corr.sigma):
                    moves.append(Move("sigma-refinement", corr.sigma, template))
        else:
            for general in self._ups(corr.sigma, corr.kind):
                moves.append(Move("sigma-generalization", corr.sigma, general))
            for special in self._downs(corr.tau, corr.kind):
                moves.append(Move("tau-refinement", corr.tau, special))
            if corr.kind == "property":
                for template in self._chain_restriction_templates(corr.tau):
                    moves.append(Move("tau-refinement", corr.tau, template))
            if corr.op == SUBSUMED and self._identification_legal(corr):
                moves.append(Move("identification", SUBSUMED, EQUIVALENT))

        proposals = []
        for move in moves:
            probe = replace(
                corr,
                history=list(corr.history),
                sigma=move.after if move.kind.startswith("sigma") else corr.sigma,
                tau=move.after if move.kind.startswith("tau") else corr.tau,
                op=EQUIVALENT if move.kind == "identification" else corr.op,
            )
            proposals.append(Proposal(move, self.check_validity(probe)))
        return proposals

    def _ups(self, term: CorrespondenceTerm, kind: str) -> list[CorrespondenceTerm]:
        if kind == "class":
            return self.taxonomy.classes.ups(term)
        if isinstance(term, Atom):
            return [Atom(iri) for iri in self.taxonomy.property_lattice(term.iri).ups(term.iri)]
        return []

    def _downs(self, term: CorrespondenceTerm, kind: str) -> list[CorrespondenceTerm]:
        if kind == "class":
            return self.taxonomy.classes.downs(term)
        if isinstance(term, Atom):
            return [Atom(iri) for iri in self.taxonomy.property_lattice(term.iri).downs(term.iri)]
        return []

    def _endpoint_classes(self, term: PropertyTerm) -> tuple[list[str], list[str]]:
        """Classes inferred on the subject/object endpoints of the term's
        instances across the source-side graphs."""
        subject_classes: set[str] = set()
        object_classes: set[str] = set()
        for source, _ in self.pairs:
            inferred = source.inferred_labels(self.taxonomy)
            for s, o in eval_term(term, source, self.taxonomy):
                subject_classes.update(inferred.get(s, ()))
                object_classes.update(inferred.get(o, ()))
        order = lambda cs: sorted(cs, key=lambda c: (local_name(c), c))
        return order(subject_classes), order(object_classes)

    def _restriction_templates(self, sigma: PropertyTerm) -> list[PropertyTerm]:
        """sigma ⊓ subj(C) / obj(D) / both, with C and D read off the
        classes of sigma's instance endpoints in the source scenarios."""
        subject_classes, object_classes = self._endpoint_classes(sigma)
        templates = []
        for c in subject_classes:
            templates.append(normalize(Intersection((sigma, SubjectRestriction(c)))))
        for d in object_classes:
            templates.append(normalize(Intersection((sigma, ObjectRestriction(d)))))
        for c, d in itertools.product(subject_classes, object_classes):
            templates.append(
                normalize(Intersection((sigma, SubjectRestriction(c), ObjectRestriction(d))))
            )
        return templates

    def _chain_restriction_templates(self, tau: PropertyTerm) -> list[PropertyTerm]:
        """For a chain tau, restrict the join intermediate to a class seen
        on actual join witnesses in the target scenarios."""
        normal = normalize(tau)
        if not isinstance(normal, Chain):
            return []
        witness_classes: set[str] = set()
        for _, target in self.pairs:
            inferred = target.inferred_labels(self.taxonomy)
            left = eval_term(normal.left, target, self.taxonomy)
            right = eval_term(normal.right, target, self.taxonomy)
            witnesses = {o for _, o in left} & {s for s, _ in right}
            for w in witnesses:
                witness_classes.update(inferred.get(w, ()))
        templates = []
        for c in sorted(witness_classes, key=lambda c: (local_name(c), c)):
            restricted = Chain(
                Intersection((normal.left, ObjectRestriction(c))), normal.right
            )
            templates.append(normalize(restricted))
        return templates

    def _identification_legal(self, corr: Correspondence) -> bool:
        forward = self._directional(corr.sigma, corr.tau, corr.kind)
        backward = self._directional(corr.tau, corr.sigma, corr.kind, reverse=True)
        return forward.extensional == "consistent" and backward.extensional == "consistent"

    # -- decisions ---------------------------------------------------

    def decide(
        self,
        cid: int,
        action: str,
        move_kind: str | None = None,
        term: CorrespondenceTerm | None = None,
        reason: str | None = None,
    ) -> Correspondence:
        corr = self.correspondence(cid)
        if corr.terminal():
            raise EngineError(f"candidate {cid} is already {corr.status}")
        if action == "discard":
            corr.status = "discarded"
            corr.reason = reason
            return corr
        if action == "accept":
            report = self.check_validity(corr)
            if report.trivial:
                raise EngineError(f"candidate {cid} is trivial ({report.trivial_reason}); cannot accept")
            corr.status = "accepted"
            self._record_acceptance(corr)
            return corr
        if action == "apply":
            if move_kind is None:
                raise EngineError("apply needs a move kind")
            return self._apply_move(corr, move_kind, term)
        raise EngineError(f"unknown action {action!r}")

    def _apply_move(self, corr: Correspondence, kind: str, term: CorrespondenceTerm | None) -> Correspondence:
        if kind not in RELAX_MOVES + STRENGTHEN_MOVES:
            raise EngineError(f"unknown move kind {kind!r}")
        if kind in RELAX_MOVES and corr.status == "strengthened":
            raise EngineError("cannot relax after strengthening has begun")

        if kind == "identification":
            if corr.op != SUBSUMED:
                raise EngineError("identification applies to subsumption candidates only")
            if not self._identification_legal(corr):
                raise EngineError("identification needs both directions extensionally consistent")
            corr.history.append(Move("identification", corr.op, EQUIVALENT))
            corr.op = EQUIVALENT
        else:
            if term is None:
                raise EngineError(f"{kind} needs a replacement term")
            side = "sigma" if kind.startswith("sigma") else "tau"
            before = corr.sigma if side == "sigma" else corr.tau
            upward = kind.endswith("generalization")
            self._check_direction(before, term, corr.kind, upward, kind)
            corr.history.append(Move(kind, before, term))
            if side == "sigma":
                corr.sigma = term
            else:
                corr.tau = term

        corr.status = "relaxed" if kind in RELAX_MOVES else "strengthened"
        return corr

    def _check_direction(
        self,
        before: CorrespondenceTerm,
        after: CorrespondenceTerm,
        kind: str,
        upward: bool,
        move_kind: str,
    ) -> None:
        sub, super_ = (before, after) if upward else (after, before)
        if self._structural(sub, super_, kind, self.taxonomy) != "yes":
            direction = "generalize" if upward else "refine"
            raise EngineError(
                f"{move_kind} must strictly {direction}: "
                f"no known subsumption between the given terms"
            )
        if self._structural(super_, sub, kind, self.taxonomy) == "yes":
            raise EngineError(f"{move_kind} must strictly change the term")

    def _record_acceptance(self, corr: Correspondence) -> None:
        entry = self.alignment.find(corr.kind, corr.sigma, corr.tau)
        if entry is not None:
            entry.correspondence_ids.append(corr.id)
            if corr.op == EQUIVALENT and entry.op == SUBSUMED:
                entry.op = EQUIVALENT
                self._classify_entry(entry)
        else:
            entry = AlignmentEntry(
                kind=corr.kind,
                sigma=corr.sigma if isinstance(corr.sigma, str) else normalize(corr.sigma),
                tau=corr.tau if isinstance(corr.tau, str) else normalize(corr.tau),
                op=corr.op,
                correspondence_ids=[corr.id],
                expressibility="owl",
            )
            self._classify_entry(entry)
            self.alignment.entries.append(entry)
        self._refresh_taxonomy()

    def _classify_entry(self, entry: AlignmentEntry) -> None:
        verdict = classify_expressibility(entry.kind, entry.sigma, entry.tau, entry.op, self.taxonomy)
        entry.expressibility, detail = verdict
        entry.owl_kind = detail if entry.expressibility == "owl" else None
        entry.reject_reason = detail if entry.expressibility == "rejected" else None
        if entry.expressibility == "rule":
            entry.rule_name = f"align_{entry.correspondence_ids[0]}"

    def _refresh_taxonomy(self) -> None:
        class_edges = []
        class_equiv = []
        prop_edges = []
        prop_equiv = []
        for entry in self.alignment.entries:
            if entry.expressibility != "owl":
                continue
            if entry.kind == "class":
                if entry.op == EQUIVALENT:
                    class_equiv.append((entry.sigma, entry.tau))
                else:
                    class_edges.append((entry.sigma, entry.tau))
            else:
                pair = (entry.sigma.iri, entry.tau.iri)
                if entry.op == EQUIVALENT:
                    prop_equiv.append(pair)
                else:
                    prop_edges.append(pair)
        self.taxonomy = augment(
            self.base_taxonomy,
            class_edges=class_edges,
            class_equivalences=class_equiv,
            property_edges=prop_edges,
            property_equivalences=prop_equiv,
        )


def generate_candidates(
    source: ScenarioGraph,
    target: ScenarioGraph,
    hints: list[tuple[PropertyTerm, PropertyTerm, str]],
    warnings: list[str] | None = None,
    taxonomy: Taxonomy | None = None,
) -> list[Correspondence]:
    """Class candidates from shared typed individuals, property candidates
    from hints whose source instances demonstrably recur on the target side.

    Ordering is deterministic: shared individuals in source document
    order, their source labels in document order, target labels by
    display name; hints keep file order.
    """
    candidates: list[Correspondence] = []
    seen_pairs: set[tuple[str, str]] = set()
    shared = [
        ref
        for ref in source.nodes
        if ref in target.nodes and source.raw_labels(ref) and target.raw_labels(ref)
    ]
    if not shared and warnings is not None:
        warnings.append("the paired scenarios share no typed individuals; no class candidates")

    next_id = 1
    for ref in shared:
        for c in source.raw_labels(ref):
            for d in sorted(target.raw_labels(ref), key=lambda iri: (local_name(iri), iri)):
                if (c, d) in seen_pairs:
                    continue
                seen_pairs.add((c, d))
                candidates.append(
                    Correspondence(
                        id=next_id,
                        kind="class",
                        sigma=c,
                        tau=d,
                        provenance=f"shared individual {local_name(ref)}",
                    )
                )
                next_id += 1

    if taxonomy is None:
        taxonomy = build_taxonomy([])
    for number, (sigma, tau, line) in enumerate(hints, start=1):
        source_ext = eval_term(sigma, source, taxonomy)
        target_ext = eval_term(tau, target, taxonomy)
        if not (source_ext & target_ext):
            if warnings is not None:
                warnings.append(f"hint {number} has no shared instance pair; skipped: {line}")
            continue
        candidates.append(
            Correspondence(
                id=next_id,
                kind="property",
                sigma=sigma,
                tau=tau,
                provenance=f"hint {number}: {line}",
            )
        )
        next_id += 1
    return candidates


def canonicalize(sigma: CorrespondenceTerm, tau: CorrespondenceTerm, op: str):
    """Fold the supersumed operator away by swapping the two terms."""
    if op == SUPERSUMED:
        return tau, sigma, SUBSUMED
    if op not in (SUBSUMED, EQUIVALENT):
        raise EngineError(f"unknown operator {op!r}")
    return sigma, tau, op


def classify_expressibility(
    kind: str,
    sigma: CorrespondenceTerm,
    tau: CorrespondenceTerm,
    op: str,
    taxonomy: Taxonomy,
) -> tuple[str, str]:
    """OWL statement kind, rule-required, or rejected with a reason."""
    if kind == "class":
        return ("owl", "equivalentClass" if op == EQUIVALENT else "subClassOf")
    sigma_n, tau_n = normalize(sigma), normalize(tau)
    kinds = {taxonomy.property_kind(a.iri) for a in _atoms_of(sigma_n) | _atoms_of(tau_n)}
    if len(kinds) > 1:
        return ("rejected", "a datatype property cannot be matched with an object property")
    if isinstance(sigma_n, Atom) and isinstance(tau_n, Atom):
        return ("owl", "equivalentProperty" if op == EQUIVALENT else "subPropertyOf")
    if kinds == {"datatype"}:
        return ("rejected", "rewrite rules cannot express datatype-property constraints")
    return ("rule", "")


def _atoms_of(term: PropertyTerm) -> set[Atom]:
    if isinstance(term, Atom):
        return {term}
    if isinstance(term, Inverse):
        return _atoms_of(term.term)
    if isinstance(term, Chain):
        return _atoms_of(term.left) | _atoms_of(term.right)
    if isinstance(term, Intersection):
        result: set[Atom] = set()
        for member in term.members:
            result |= _atoms_of(member)
        return result
    return set()


class _VariableNames:
    def __init__(self) -> None:
        self.count = 0

    def fresh(self) -> str:
        self.count += 1
        return "?z" if self.count == 1 else f"?z{self.count}"


def _pattern_atoms(
    term: PropertyTerm, subject: str, object_: str, names: _VariableNames
) -> tuple[list[EdgeAtom], list[tuple[str, str]], list[str]]:
    """Flatten a normalized term into edge atoms, (variable, class) type
    constraints, and the intermediate variables introduced along the way."""
    term = normalize(term)
    if isinstance(term, Atom):
        return [EdgeAtom(subject, term.iri, object_)], [], []
    if isinstance(term, Inverse):
        inner = term.term
        assert isinstance(inner, Atom)
        return [EdgeAtom(object_, inner.iri, subject)], [], []
    if isinstance(term, Chain):
        mid = names.fresh()
        left_edges, left_types, left_vars = _pattern_atoms(term.left, subject, mid, names)
        right_edges, right_types, right_vars = _pattern_atoms(term.right, mid, object_, names)
        return (
            left_edges + right_edges,
            left_types + right_types,
            [mid] + left_vars + right_vars,
        )
    if isinstance(term, Intersection):
        edges: list[EdgeAtom] = []
        types: list[tuple[str, str]] = []
        variables: list[str] = []
        for member in term.members:
            e, t, v = _pattern_atoms(member, subject, object_, names)
            edges.extend(e)
            types.extend(t)
            variables.extend(v)
        return edges, types, variables
    if isinstance(term, SubjectRestriction):
        return [], [(subject, term.class_iri)], []
    return [], [(object_, term.class_iri)], []


def correspondence_rule(entry: AlignmentEntry) -> RewriteRule:
    """Translate a rule-required entry into a rewrite rule: the source
    term becomes the antecedent pattern, the target term the existential
    consequent, sharing the endpoint variables ?x and ?y."""
    names = _VariableNames()
    sigma_edges, sigma_types, sigma_vars = _pattern_atoms(entry.sigma, "?x", "?y", names)
    antecedent: list[EdgeAtom | TypeAtom] = list(sigma_edges) + [
        TypeAtom(v, c) for v, c in sigma_types
    ]

    tau_edges, tau_types, tau_vars = _pattern_atoms(entry.tau, "?x", "?y", names)
    fresh: list[FreshDecl] = []
    classes_by_var: dict[str, list[str]] = {}
    for variable, class_iri in tau_types:
        classes_by_var.setdefault(variable, []).append(class_iri)
    for variable, classes in classes_by_var.items():
        if variable not in tau_vars:
            raise EngineError("target term restricts an endpoint; not expressible as a rule")
        if len(classes) > 1:
            raise EngineError("multiple class constraints on one witness variable")
    for variable in tau_vars:
        fresh.append(FreshDecl(variable, classes_by_var.get(variable, [None])[0]))
    return RewriteRule(
        name=entry.rule_name or "align",
        antecedent=tuple(antecedent),
        fresh=tuple(fresh),
        consequent_edges=tuple(tau_edges),
    )


def serialize_alignment(alignment: AlignmentSet, prefixes: PrefixMap) -> dict[str, str]:
    """Emit the OWL-expressible entries as turtle and the rest as rules."""
    from .namespaces import (
        OWL_EQUIVALENT_CLASS,
        OWL_EQUIVALENT_PROPERTY,
        RDFS_SUBCLASSOF,
        RDFS_SUBPROPERTYOF,
    )
    from .rules import rule_text
    from .turtle_io import serialize_turtle

    predicate_for = {
        "subClassOf": RDFS_SUBCLASSOF,
        "equivalentClass": OWL_EQUIVALENT_CLASS,
        "subPropertyOf": RDFS_SUBPROPERTYOF,
        "equivalentProperty": OWL_EQUIVALENT_PROPERTY,
    }
    triples = []
    rules = []
    for entry in alignment.entries:
        if entry.expressibility == "owl":
            sigma = entry.sigma if isinstance(entry.sigma, str) else entry.sigma.iri
            tau = entry.tau if isinstance(entry.tau, str) else entry.tau.iri
            triples.append((Iri(sigma), Iri(predicate_for[entry.owl_kind]), Iri(tau)))
        elif entry.expressibility == "rule":
            rules.append(correspondence_rule(entry))
    store = TripleStore(triples, prefixes=prefixes)
    return {"ttl": serialize_turtle(store), "rules": rule_text(rules, prefixes)}

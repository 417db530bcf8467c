"""Alignment quality metrics and multi-tier conformance checking.

Metrics treat alignments as sets of normalized (sigma, tau, op) tuples
and compute precision, recall, and the balanced F-measure as exact
rationals; a metric with an empty denominator is undefined and reported
as such rather than as zero.

The tier check verifies the layered-ontology discipline: every class of
a marketplace-level ontology must sit below one of the fundamental
categories (or below the annotation class) of the mid-tier ontology.
Categories are discovered through their marker class rather than
hardcoded, and a class under several categories reports all of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .engine import EQUIVALENT, SUBSUMED, AlignmentEntry, AlignmentSet, _entry_key
from .namespaces import (
    ANNOTATION_CLASS,
    FUNDAMENTAL_CATEGORY_MARKER,
    OWL_CLASS,
    OWL_EQUIVALENT_CLASS,
    OWL_EQUIVALENT_PROPERTY,
    RDF_TYPE,
    RDFS_SUBCLASSOF,
    RDFS_SUBPROPERTYOF,
    TOP,
)
from .taxonomy import OntologyBundle, subsumes
from .terms import Atom
from .turtle_io import Iri, TripleStore


@dataclass
class MetricsReport:
    aligned_size: int
    reference_size: int
    intersection_size: int
    precision: Fraction | None
    recall: Fraction | None
    f_measure: Fraction | None

    def as_dict(self) -> dict:
        def number(value: Fraction | None):
            return None if value is None else float(value)

        return {
            "alignedSize": self.aligned_size,
            "referenceSize": self.reference_size,
            "intersectionSize": self.intersection_size,
            "precision": number(self.precision),
            "recall": number(self.recall),
            "fMeasure": number(self.f_measure),
        }


def _membership_keys(alignment: AlignmentSet) -> set:
    keys = set()
    for entry in alignment.entries:
        keys.add(_entry_key(entry.kind, entry.sigma, entry.tau) + (entry.op,))
    return keys


def score(aligned: AlignmentSet, reference: AlignmentSet) -> MetricsReport:
    """Precision, recall, F-measure of an alignment against a reference.

    Membership ignores history and provenance: two correspondences are
    the same element exactly when their normalized terms and operator
    agree.  F is the harmonic mean, 0 by convention when the sets are
    disjoint, undefined when either set is empty.
    """
    a = _membership_keys(aligned)
    r = _membership_keys(reference)
    common = len(a & r)
    precision = Fraction(common, len(a)) if a else None
    recall = Fraction(common, len(r)) if r else None
    if precision is None or recall is None:
        f_measure = None
    elif precision + recall == 0:
        f_measure = Fraction(0)
    else:
        f_measure = 2 * precision * recall / (precision + recall)
    return MetricsReport(
        aligned_size=len(a),
        reference_size=len(r),
        intersection_size=common,
        precision=precision,
        recall=recall,
        f_measure=f_measure,
    )


@dataclass
class ClassVerdict:
    kind: str  # "category" | "annotation" | "unclassified"
    categories: tuple[str, ...] = ()


@dataclass
class TierReport:
    verdicts: dict[str, ClassVerdict] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _declared_classes(bundle: OntologyBundle, store_name: str) -> list[str]:
    classes: dict[str, None] = {}
    for s, p, o in bundle.stores[store_name]:
        if p.value == RDF_TYPE and isinstance(o, Iri) and o.value == OWL_CLASS and isinstance(s, Iri):
            classes.setdefault(s.value, None)
    return list(classes)


def discover_categories(bundle: OntologyBundle) -> list[str]:
    """Classes tagged with the fundamental-category marker, any store."""
    found: dict[str, None] = {}
    for store in bundle.stores.values():
        for s, p, o in store:
            if (
                p.value == RDF_TYPE
                and isinstance(o, Iri)
                and o.value == FUNDAMENTAL_CATEGORY_MARKER
                and isinstance(s, Iri)
            ):
                found.setdefault(s.value, None)
    return sorted(found)


def tier_check(bundle: OntologyBundle) -> TierReport:
    """Assign every declared class its fundamental categories; flag
    marketplace-level classes that reach neither a category nor the
    annotation class."""
    categories = set(discover_categories(bundle))
    taxonomy = bundle.taxonomy
    report = TierReport()
    for store_name in sorted(bundle.stores):
        role = bundle.roles.get(store_name, "marketplace")
        for class_iri in _declared_classes(bundle, store_name):
            if class_iri in report.verdicts:
                continue
            ancestors = taxonomy.classes.ancestors(class_iri) - {TOP}
            above = tuple(sorted(ancestors & categories))
            if above:
                verdict = ClassVerdict("category", above)
            elif any(subsumes(taxonomy, ANNOTATION_CLASS, a) for a in ancestors):
                verdict = ClassVerdict("annotation")
            else:
                verdict = ClassVerdict("unclassified")
                if role == "marketplace" and class_iri not in categories:
                    report.violations.append({"class": class_iri, "store": store_name})
            report.verdicts[class_iri] = verdict
    return report


_ALIGNMENT_PREDICATES = {
    RDFS_SUBCLASSOF: ("class", SUBSUMED),
    OWL_EQUIVALENT_CLASS: ("class", EQUIVALENT),
    RDFS_SUBPROPERTYOF: ("property", SUBSUMED),
    OWL_EQUIVALENT_PROPERTY: ("property", EQUIVALENT),
}


def alignment_from_store(
    store: TripleStore, source_id: str = "source", target_id: str = "target"
) -> AlignmentSet:
    """Read the atomic correspondences of a serialized alignment document.

    Each subClassOf / equivalentClass / subPropertyOf / equivalentProperty
    triple becomes one entry; anything else in the document is ignored.
    """
    entries = []
    for s, p, o in store:
        if not (isinstance(s, Iri) and isinstance(p, Iri) and isinstance(o, Iri)):
            continue
        mapped = _ALIGNMENT_PREDICATES.get(p.value)
        if mapped is None:
            continue
        kind, op = mapped
        if kind == "class":
            sigma, tau = s.value, o.value
        else:
            sigma, tau = Atom(s.value), Atom(o.value)
        entries.append(
            AlignmentEntry(
                kind=kind,
                sigma=sigma,
                tau=tau,
                op=op,
                correspondence_ids=[],
                expressibility="owl",
            )
        )
    return AlignmentSet(source_id=source_id, target_id=target_id, entries=entries)

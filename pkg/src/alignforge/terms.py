"""Relation terms: atoms, inverses, chains, intersections, restrictions.

Terms are immutable trees.  :func:`normalize` rewrites a term into a
canonical form:

* double inverses cancel;
* inverses push through chains (reversing them), intersections, and
  subject/object restrictions (swapping the two), so inverses survive
  only directly on atoms;
* chains re-associate to the right;
* intersections flatten, drop duplicates, collapse a singleton to its
  member, and sort by the total term order.

Equality of meaning is decided on normal forms (:func:`term_equal`).
:func:`structural_subsumption` is a sound, incomplete subsumption check;
it answers ``yes`` only when containment follows from term structure and
the lattice, and ``unknown`` otherwise, never ``no``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .taxonomy import Taxonomy, property_subsumes, subsumes
from .turtle_io import PrefixMap


@dataclass(frozen=True)
class Atom:
    iri: str


@dataclass(frozen=True)
class Inverse:
    term: "PropertyTerm"


@dataclass(frozen=True)
class Chain:
    left: "PropertyTerm"
    right: "PropertyTerm"


@dataclass(frozen=True)
class Intersection:
    members: tuple["PropertyTerm", ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("intersection needs at least one member")


@dataclass(frozen=True)
class SubjectRestriction:
    class_iri: str


@dataclass(frozen=True)
class ObjectRestriction:
    class_iri: str


PropertyTerm = Atom | Inverse | Chain | Intersection | SubjectRestriction | ObjectRestriction

_RANK = {Atom: 0, Inverse: 1, Chain: 2, Intersection: 3, SubjectRestriction: 4, ObjectRestriction: 5}


def sort_key(term: PropertyTerm) -> tuple:
    """Total order: constructor rank first, then operands recursively."""
    if isinstance(term, Atom):
        return (0, term.iri)
    if isinstance(term, Inverse):
        return (1, sort_key(term.term))
    if isinstance(term, Chain):
        return (2, sort_key(term.left), sort_key(term.right))
    if isinstance(term, Intersection):
        return (3, len(term.members), tuple(sort_key(m) for m in term.members))
    if isinstance(term, SubjectRestriction):
        return (4, term.class_iri)
    return (5, term.class_iri)


def normalize(term: PropertyTerm) -> PropertyTerm:
    if isinstance(term, (Atom, SubjectRestriction, ObjectRestriction)):
        return term
    if isinstance(term, Inverse):
        inner = normalize(term.term)
        if isinstance(inner, Atom):
            return Inverse(inner)
        if isinstance(inner, Inverse):
            return inner.term
        if isinstance(inner, Chain):
            return normalize(Chain(Inverse(inner.right), Inverse(inner.left)))
        if isinstance(inner, Intersection):
            return normalize(Intersection(tuple(Inverse(m) for m in inner.members)))
        if isinstance(inner, SubjectRestriction):
            return ObjectRestriction(inner.class_iri)
        return SubjectRestriction(inner.class_iri)
    if isinstance(term, Chain):
        left = normalize(term.left)
        right = normalize(term.right)
        if isinstance(left, Chain):
            return normalize(Chain(left.left, Chain(left.right, right)))
        return Chain(left, right)
    flattened: list[PropertyTerm] = []
    for member in term.members:
        m = normalize(member)
        if isinstance(m, Intersection):
            flattened.extend(m.members)
        else:
            flattened.append(m)
    unique = sorted(set(flattened), key=sort_key)
    if len(unique) == 1:
        return unique[0]
    return Intersection(tuple(unique))


def term_equal(a: PropertyTerm, b: PropertyTerm) -> bool:
    return normalize(a) == normalize(b)


def structural_subsumption(taxonomy: Taxonomy, sub: PropertyTerm, super_: PropertyTerm) -> str:
    """Sound syntactic subsumption check: returns "yes" or "unknown"."""
    return _subsumed(taxonomy, normalize(sub), normalize(super_))


def _subsumed(t: Taxonomy, a: PropertyTerm, b: PropertyTerm) -> str:
    if a == b:
        return "yes"
    if isinstance(a, Atom) and isinstance(b, Atom):
        return "yes" if property_subsumes(t, b.iri, a.iri) else "unknown"
    if isinstance(b, Intersection):
        if all(_subsumed(t, a, m) == "yes" for m in b.members):
            return "yes"
        return "unknown"
    if isinstance(a, Intersection):
        if any(_subsumed(t, m, b) == "yes" for m in a.members):
            return "yes"
        return "unknown"
    if isinstance(a, Inverse) and isinstance(b, Inverse):
        return _subsumed(t, a.term, b.term)
    if isinstance(a, Chain) and isinstance(b, Chain):
        if _subsumed(t, a.left, b.left) == "yes" and _subsumed(t, a.right, b.right) == "yes":
            return "yes"
        return "unknown"
    if isinstance(a, SubjectRestriction) and isinstance(b, SubjectRestriction):
        return "yes" if subsumes(t, b.class_iri, a.class_iri) else "unknown"
    if isinstance(a, ObjectRestriction) and isinstance(b, ObjectRestriction):
        return "yes" if subsumes(t, b.class_iri, a.class_iri) else "unknown"
    return "unknown"


class TermSyntaxError(ValueError):
    """Malformed relation term text."""


def term_text(term: PropertyTerm | str, prefixes: PrefixMap | None = None) -> str:
    """Render a term (or a bare class/property IRI) in the text syntax."""
    if isinstance(term, str):
        return _name(term, prefixes)
    if isinstance(term, Atom):
        return _name(term.iri, prefixes)
    if isinstance(term, Inverse):
        return f"inv({term_text(term.term, prefixes)})"
    if isinstance(term, Chain):
        parts = []
        node: PropertyTerm = term
        while isinstance(node, Chain):
            parts.append(node.left)
            node = node.right
        parts.append(node)
        return "chain(" + ", ".join(term_text(p, prefixes) for p in parts) + ")"
    if isinstance(term, Intersection):
        return "and(" + ", ".join(term_text(m, prefixes) for m in term.members) + ")"
    if isinstance(term, SubjectRestriction):
        return f"subj({_name(term.class_iri, prefixes)})"
    return f"obj({_name(term.class_iri, prefixes)})"


def _name(iri: str, prefixes: PrefixMap | None) -> str:
    if prefixes is not None:
        compact = prefixes.compact(iri)
        if compact is not None:
            return compact
    return f"<{iri}>"


_NAME_CHARS = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_.:-")


class _TermParser:
    def __init__(self, text: str, prefixes: PrefixMap) -> None:
        self.text = text
        self.pos = 0
        self.prefixes = prefixes

    def error(self, message: str) -> TermSyntaxError:
        return TermSyntaxError(f"at position {self.pos}: {message}")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            raise self.error(f"expected {char!r}, found {self.peek() or 'end of input'!r}")
        self.pos += 1

    def parse(self) -> PropertyTerm:
        term = self.parse_term()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing characters after term")
        return term

    def parse_term(self) -> PropertyTerm:
        self.skip_ws()
        if self.peek() == "<":
            return Atom(self.parse_full_iri())
        name = self.parse_name()
        self.skip_ws()
        if self.peek() == "(" and name in ("inv", "chain", "and", "subj", "obj"):
            return self.parse_call(name)
        return Atom(self.resolve(name))

    def parse_call(self, op: str) -> PropertyTerm:
        self.expect("(")
        args: list[PropertyTerm] = []
        class_args: list[str] = []
        while True:
            self.skip_ws()
            if op in ("subj", "obj"):
                if self.peek() == "<":
                    class_args.append(self.parse_full_iri())
                else:
                    class_args.append(self.resolve(self.parse_name()))
            else:
                args.append(self.parse_term())
            self.skip_ws()
            if self.peek() == ",":
                self.pos += 1
                continue
            break
        self.expect(")")
        if op == "inv":
            if len(args) != 1:
                raise self.error("inv takes exactly one argument")
            return Inverse(args[0])
        if op == "chain":
            if len(args) < 2:
                raise self.error("chain takes at least two arguments")
            result = args[-1]
            for part in reversed(args[:-1]):
                result = Chain(part, result)
            return result
        if op == "and":
            if not args:
                raise self.error("and takes at least one argument")
            return Intersection(tuple(args))
        if len(class_args) != 1:
            raise self.error(f"{op} takes exactly one class argument")
        if op == "subj":
            return SubjectRestriction(class_args[0])
        return ObjectRestriction(class_args[0])

    def parse_full_iri(self) -> str:
        self.expect("<")
        start = self.pos
        while self.peek() not in (">", ""):
            self.pos += 1
        value = self.text[start:self.pos]
        self.expect(">")
        return value

    def parse_name(self) -> str:
        start = self.pos
        while self.peek() in _NAME_CHARS and self.peek() != "":
            self.pos += 1
        name = self.text[start:self.pos]
        if not name:
            raise self.error(f"expected a name, found {self.peek() or 'end of input'!r}")
        return name

    def resolve(self, name: str) -> str:
        if ":" not in name:
            raise self.error(f"{name!r} is not a prefixed name")
        try:
            return self.prefixes.expand(name)
        except KeyError:
            raise self.error(f"unknown prefix in {name!r}")


def parse_term(text: str, prefixes: PrefixMap) -> PropertyTerm:
    """Parse the textual term syntax: CURIEs, inv, chain, and, subj, obj."""
    return _TermParser(text, prefixes).parse()


def parse_class_ref(text: str, prefixes: PrefixMap) -> str:
    """Parse a bare class reference (CURIE or <IRI>)."""
    parser = _TermParser(text, prefixes)
    parser.skip_ws()
    if parser.peek() == "<":
        iri = parser.parse_full_iri()
    else:
        iri = parser.resolve(parser.parse_name())
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing characters after class reference")
    return iri

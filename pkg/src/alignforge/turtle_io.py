"""Turtle subset reader and writer.

Supported syntax: ``@prefix`` directives, prefixed names, angle-bracket
IRIs, ``a`` as type verb, predicate lists with ``;``, object lists with
``,``, anonymous blank nodes ``[ ... ]``, labeled blank nodes ``_:name``,
string literals with optional ``^^`` datatype, bare numeric literals, and
``#`` comments.  Anything beyond that (collections, multiline strings,
relative IRIs, language tags) is rejected with a position-annotated error.

Blank nodes are relabeled ``_:b0``, ``_:b1``, ... in document order, so
parsing the same bytes always yields the same labels.  Store equality is
therefore either exact (same labels) or up to bijection via
:func:`isomorphic`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal

from .namespaces import RDF_TYPE, XSD_DECIMAL, XSD_INTEGER, XSD_STRING


class ParseError(ValueError):
    """Turtle syntax or prefix error with source position."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Iri:
    """Absolute IRI."""

    value: str

    def __repr__(self) -> str:
        return f"Iri({self.value!r})"


@dataclass(frozen=True)
class BlankNode:
    """Blank node identified by a document-scoped label."""

    label: str

    def __repr__(self) -> str:
        return f"BlankNode(_:{self.label})"


@dataclass(frozen=True)
class Literal:
    """Typed literal; the lexical form is kept exactly as written."""

    lexical: str
    datatype: str = XSD_STRING

    def decimal_value(self) -> Decimal:
        """Exact numeric value for decimal/integer literals."""
        return Decimal(self.lexical)


Subject = Iri | BlankNode
Term = Iri | BlankNode | Literal
Triple = tuple[Subject, Iri, Term]


class PrefixMap:
    """Bidirectional prefix label <-> namespace base table."""

    def __init__(self, bindings: dict[str, str] | None = None) -> None:
        self._by_label: dict[str, str] = dict(bindings or {})

    def bind(self, label: str, base: str) -> None:
        self._by_label[label] = base

    def base(self, label: str) -> str | None:
        return self._by_label.get(label)

    def items(self) -> list[tuple[str, str]]:
        return sorted(self._by_label.items())

    def copy(self) -> "PrefixMap":
        return PrefixMap(self._by_label)

    def expand(self, name: str) -> str:
        """Expand a prefixed name to an absolute IRI."""
        label, _, local = name.partition(":")
        base = self._by_label.get(label)
        if base is None:
            raise KeyError(f"unknown prefix {label!r}")
        return base + local

    def compact(self, iri: str) -> str | None:
        """Longest-base prefixed form of an IRI, or None if not compactable."""
        best: tuple[str, str] | None = None
        for label, base in self._by_label.items():
            if iri.startswith(base) and (best is None or len(base) > len(best[1])):
                best = (label, base)
        if best is None:
            return None
        local = iri[len(best[1]):]
        if local and not _is_pn_local(local):
            return None
        return f"{best[0]}:{local}"


class TripleStore:
    """Immutable, order-preserving set of triples plus a prefix map."""

    def __init__(self, triples: list[Triple] | tuple[Triple, ...] = (), prefixes: PrefixMap | None = None) -> None:
        seen: set[Triple] = set()
        kept: list[Triple] = []
        for t in triples:
            if t not in seen:
                seen.add(t)
                kept.append(t)
        self.triples: tuple[Triple, ...] = tuple(kept)
        self.prefixes = prefixes.copy() if prefixes is not None else PrefixMap()

    def __iter__(self):
        return iter(self.triples)

    def __len__(self) -> int:
        return len(self.triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self.triple_set()

    def triple_set(self) -> frozenset[Triple]:
        return frozenset(self.triples)

    def match(self, s: Subject | None = None, p: Iri | None = None, o: Term | None = None):
        """Triples matching the given components (None = wildcard)."""
        for t in self.triples:
            if (s is None or t[0] == s) and (p is None or t[1] == p) and (o is None or t[2] == o):
                yield t

    def with_triples(self, more: list[Triple], prefixes: PrefixMap | None = None) -> "TripleStore":
        merged = self.prefixes.copy()
        if prefixes is not None:
            for label, base in prefixes.items():
                merged.bind(label, base)
        return TripleStore(list(self.triples) + list(more), merged)


def merge_stores(stores: list[TripleStore]) -> TripleStore:
    """Union of several stores; prefix bindings merge left to right."""
    prefixes = PrefixMap()
    triples: list[Triple] = []
    for s in stores:
        for label, base in s.prefixes.items():
            prefixes.bind(label, base)
        triples.extend(s.triples)
    return TripleStore(triples, prefixes)


_PN_LOCAL_START = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_0123456789")
_PN_LOCAL_REST = _PN_LOCAL_START | set(".-")


def _is_pn_local(s: str) -> bool:
    if not s or s[0] not in _PN_LOCAL_START:
        return False
    if s[-1] == ".":
        return False
    return all(c in _PN_LOCAL_REST for c in s)


class _Scanner:
    """Character cursor with line/column tracking."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.col)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self) -> str:
        c = self.text[self.pos]
        self.pos += 1
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return c

    def skip_ws(self) -> None:
        while not self.at_end():
            c = self.peek()
            if c in " \t\r\n":
                self.advance()
            elif c == "#":
                while not self.at_end() and self.peek() != "\n":
                    self.advance()
            else:
                return

    def expect(self, char: str) -> None:
        if self.at_end() or self.peek() != char:
            found = self.peek() or "end of input"
            raise self.error(f"expected {char!r}, found {found!r}")
        self.advance()

    def take_while(self, pred) -> str:
        start = self.pos
        while not self.at_end() and pred(self.peek()):
            self.advance()
        return self.text[start:self.pos]


class _Parser:
    def __init__(self, text: str, base_prefixes: PrefixMap | None) -> None:
        self.sc = _Scanner(text)
        self.prefixes = base_prefixes.copy() if base_prefixes else PrefixMap()
        self.doc_prefixes = PrefixMap()
        self.triples: list[Triple] = []
        self._blank_map: dict[str, BlankNode] = {}
        self._blank_count = 0

    def fresh_blank(self) -> BlankNode:
        node = BlankNode(f"b{self._blank_count}")
        self._blank_count += 1
        return node

    def blank_for_label(self, label: str) -> BlankNode:
        if label not in self._blank_map:
            self._blank_map[label] = self.fresh_blank()
        return self._blank_map[label]

    def parse(self) -> TripleStore:
        sc = self.sc
        sc.skip_ws()
        while not sc.at_end():
            if sc.peek() == "@":
                self.parse_directive()
            else:
                subject = self.parse_subject()
                sc.skip_ws()
                self.parse_predicate_object_list(subject)
                sc.skip_ws()
                sc.expect(".")
            sc.skip_ws()
        return TripleStore(self.triples, self.doc_prefixes)

    def parse_directive(self) -> None:
        sc = self.sc
        word = sc.take_while(lambda c: c not in " \t\r\n")
        if word != "@prefix":
            raise sc.error(f"unsupported directive {word!r}")
        sc.skip_ws()
        label = sc.take_while(lambda c: c != ":")
        sc.expect(":")
        sc.skip_ws()
        base = self.parse_iriref()
        self.prefixes.bind(label, base)
        self.doc_prefixes.bind(label, base)
        sc.skip_ws()
        sc.expect(".")

    def parse_iriref(self) -> str:
        sc = self.sc
        sc.expect("<")
        value = sc.take_while(lambda c: c not in ">\n")
        sc.expect(">")
        if ":" not in value:
            raise sc.error(f"relative IRI <{value}> not supported")
        return value

    def parse_subject(self) -> Subject:
        sc = self.sc
        c = sc.peek()
        if c == "[":
            return self.parse_anon_blank()
        if c == "_":
            return self.parse_blank_label()
        return self.parse_iri()

    def parse_iri(self) -> Iri:
        sc = self.sc
        if sc.peek() == "<":
            return Iri(self.parse_iriref())
        name = sc.take_while(lambda c: c in _PN_LOCAL_REST or c == ":")
        if not name:
            found = sc.peek() or "end of input"
            raise sc.error(f"expected IRI or prefixed name, found {found!r}")
        if name.endswith("."):
            # A bare final dot is the statement terminator, not part of
            # the local name; back the scanner up by one character.
            sc.pos -= 1
            sc.col -= 1
            name = name[:-1]
        if ":" not in name:
            raise sc.error(f"expected prefixed name, found {name!r}")
        try:
            return Iri(self.prefixes.expand(name))
        except KeyError as exc:
            raise sc.error(str(exc.args[0]))

    def parse_blank_label(self) -> BlankNode:
        sc = self.sc
        sc.expect("_")
        sc.expect(":")
        label = sc.take_while(lambda c: c in _PN_LOCAL_REST)
        if not label:
            raise sc.error("empty blank node label")
        return self.blank_for_label(label)

    def parse_anon_blank(self) -> BlankNode:
        sc = self.sc
        sc.expect("[")
        node = self.fresh_blank()
        sc.skip_ws()
        if sc.peek() != "]":
            self.parse_predicate_object_list(node)
            sc.skip_ws()
        sc.expect("]")
        return node

    def parse_predicate_object_list(self, subject: Subject) -> None:
        sc = self.sc
        while True:
            predicate = self.parse_verb()
            sc.skip_ws()
            while True:
                obj = self.parse_object()
                self.triples.append((subject, predicate, obj))
                sc.skip_ws()
                if sc.peek() == ",":
                    sc.advance()
                    sc.skip_ws()
                    continue
                break
            if sc.peek() == ";":
                sc.advance()
                sc.skip_ws()
                if sc.peek() in ".]" or sc.at_end():  # trailing semicolon
                    return
                continue
            return

    def parse_verb(self) -> Iri:
        sc = self.sc
        if sc.peek() == "a":
            mark = sc.pos
            sc.advance()
            if sc.peek() in " \t\r\n":
                return Iri(RDF_TYPE)
            sc.pos = mark
            sc.col -= 1
        return self.parse_iri()

    def parse_object(self) -> Term:
        sc = self.sc
        c = sc.peek()
        if c == "[":
            return self.parse_anon_blank()
        if c == "_":
            return self.parse_blank_label()
        if c == '"':
            return self.parse_string_literal()
        if c.isdigit() or c in "+-":
            return self.parse_numeric_literal()
        return self.parse_iri()

    def parse_string_literal(self) -> Literal:
        sc = self.sc
        sc.expect('"')
        chars: list[str] = []
        while True:
            if sc.at_end():
                raise sc.error("unterminated string literal")
            c = sc.advance()
            if c == '"':
                break
            if c == "\n":
                raise sc.error("multiline strings not supported")
            if c == "\\":
                esc = sc.advance()
                mapped = {"\\": "\\", '"': '"', "n": "\n", "t": "\t"}.get(esc)
                if mapped is None:
                    raise sc.error(f"unsupported escape \\{esc}")
                chars.append(mapped)
            else:
                chars.append(c)
        lexical = "".join(chars)
        if sc.peek() == "^":
            sc.expect("^")
            sc.expect("^")
            datatype = self.parse_iri()
            return Literal(lexical, datatype.value)
        if sc.peek() == "@":
            raise sc.error("language tags not supported")
        return Literal(lexical, XSD_STRING)

    def parse_numeric_literal(self) -> Literal:
        sc = self.sc
        start = sc.pos
        if sc.peek() in "+-":
            sc.advance()
        digits = sc.take_while(lambda c: c.isdigit())
        if not digits:
            raise sc.error("malformed numeric literal")
        datatype = XSD_INTEGER
        if sc.peek() == "." and sc.pos + 1 < len(sc.text) and sc.text[sc.pos + 1].isdigit():
            sc.advance()
            sc.take_while(lambda c: c.isdigit())
            datatype = XSD_DECIMAL
        return Literal(sc.text[start:sc.pos], datatype)


def parse_turtle(text: str, base_prefixes: PrefixMap | None = None) -> TripleStore:
    """Parse a Turtle document into a TripleStore.

    ``base_prefixes`` supplies bindings usable without an in-document
    ``@prefix``; the returned store records only in-document bindings.
    """
    return _Parser(text, base_prefixes).parse()


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")


class _Serializer:
    def __init__(self, store: TripleStore) -> None:
        self.store = store
        self.used_prefixes: set[str] = set()
        # Blank nodes referenced exactly once as an object and free of
        # reference cycles can be folded into [ ... ] at the point of use.
        object_refs: dict[str, int] = {}
        for _, _, o in store:
            if isinstance(o, BlankNode):
                object_refs[o.label] = object_refs.get(o.label, 0) + 1
        self.inline: set[str] = {
            label for label, n in object_refs.items() if n == 1 and not self._in_cycle(label)
        }

    def _in_cycle(self, label: str) -> bool:
        seen = {label}
        frontier = [label]
        while frontier:
            current = frontier.pop()
            for s, _, o in self.store:
                if isinstance(s, BlankNode) and s.label == current and isinstance(o, BlankNode):
                    if o.label == label:
                        return True
                    if o.label not in seen:
                        seen.add(o.label)
                        frontier.append(o.label)
        return False

    def term(self, t: Term) -> str:
        if isinstance(t, Iri):
            if t.value == RDF_TYPE:
                return "a"
            compact = self.store.prefixes.compact(t.value)
            if compact is not None:
                self.used_prefixes.add(compact.partition(":")[0])
                return compact
            return f"<{t.value}>"
        if isinstance(t, BlankNode):
            if t.label in self.inline:
                return self.block(t, indent="    ")
            return f"_:{t.label}"
        if t.datatype in (XSD_DECIMAL, XSD_INTEGER):
            return t.lexical
        if t.datatype == XSD_STRING:
            return f'"{_escape(t.lexical)}"'
        return f'"{_escape(t.lexical)}"^^{self.term(Iri(t.datatype))}'

    def block(self, subject: Subject, indent: str) -> str:
        """Render a blank node's own triples as an inline [ ... ] block."""
        inner = self.predicate_lines(subject, indent + "    ")
        joined = (" ;\n" + indent + "    ").join(inner)
        return "[ " + joined + " ]"

    def predicate_lines(self, subject: Subject, indent: str) -> list[str]:
        by_predicate: dict[Iri, list[Term]] = {}
        order: list[Iri] = []
        for s, p, o in self.store:
            if s == subject:
                if p not in by_predicate:
                    by_predicate[p] = []
                    order.append(p)
                by_predicate[p].append(o)
        lines = []
        for p in order:
            objects = ", ".join(self.term(o) for o in by_predicate[p])
            lines.append(f"{self.term(p)} {objects}")
        return lines

    def serialize(self) -> str:
        subjects: list[Subject] = []
        for s, _, _ in self.store:
            if s not in subjects:
                if isinstance(s, BlankNode) and s.label in self.inline:
                    continue
                subjects.append(s)
        body_parts: list[str] = []
        for subject in subjects:
            lines = self.predicate_lines(subject, "    ")
            head = self.term(subject) if not isinstance(subject, BlankNode) else f"_:{subject.label}"
            body = (" ;\n    ").join(lines)
            body_parts.append(f"{head} {body} .")
        body_text = "\n\n".join(body_parts)
        header_lines = []
        for label, base in self.store.prefixes.items():
            if label in self.used_prefixes:
                header_lines.append(f"@prefix {label}: <{base}> .")
        header = "\n".join(header_lines)
        if header and body_text:
            return header + "\n\n" + body_text + "\n"
        return header + body_text + ("\n" if body_text or header else "")


def serialize_turtle(store: TripleStore) -> str:
    """Render a store as Turtle; output re-parses to an equal triple set."""
    return _Serializer(store).serialize()


def _blank_labels(triples: frozenset[Triple]) -> list[str]:
    labels: set[str] = set()
    for s, _, o in triples:
        if isinstance(s, BlankNode):
            labels.add(s.label)
        if isinstance(o, BlankNode):
            labels.add(o.label)
    return sorted(labels)


def _rename(triples: frozenset[Triple], mapping: dict[str, str]) -> frozenset[Triple]:
    def node(t: Term) -> Term:
        if isinstance(t, BlankNode) and t.label in mapping:
            return BlankNode(mapping[t.label])
        return t

    return frozenset((node(s), p, node(o)) for s, p, o in triples)  # type: ignore[misc]


def isomorphic(a: TripleStore, b: TripleStore) -> bool:
    """Triple-set equality up to a bijection between blank node labels."""
    ta, tb = a.triple_set(), b.triple_set()
    la, lb = _blank_labels(ta), _blank_labels(tb)
    if len(la) != len(lb) or len(ta) != len(tb):
        return False
    if not la:
        return ta == tb

    def backtrack(mapping: dict[str, str], remaining: list[str], free: set[str]) -> bool:
        if not remaining:
            return _rename(ta, mapping) == tb
        label = remaining[0]
        for candidate in sorted(free):
            mapping[label] = candidate
            if backtrack(mapping, remaining[1:], free - {candidate}):
                return True
            del mapping[label]
        return False

    return backtrack({}, la, set(lb))

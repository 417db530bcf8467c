"""Turtle reader/writer: exact-token fidelity and round-trip isomorphism."""

from pathlib import Path

import pytest

from alignforge.turtle_io import (
    BlankNode,
    Iri,
    Literal,
    ParseError,
    PrefixMap,
    TripleStore,
    isomorphic,
    parse_turtle,
    serialize_turtle,
)

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
ALL_TTL = sorted(FIXTURES.rglob("*.ttl"))


def test_fixture_corpus_is_present():
    assert len(ALL_TTL) >= 6


# -- oracle-first: a tiny document with its exact triple set frozen ----


def test_small_document_exact_triples():
    doc = """
@prefix ex: <https://example.org/x#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .

ex:a a ex:Widget ;
    ex:knows ex:b, ex:c ;
    ex:mass 2.5764 ;
    ex:code "231-635-3" .
"""
    store = parse_turtle(doc)
    ex = "https://example.org/x#"
    rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
    expected = {
        (Iri(ex + "a"), Iri(rdf_type), Iri(ex + "Widget")),
        (Iri(ex + "a"), Iri(ex + "knows"), Iri(ex + "b")),
        (Iri(ex + "a"), Iri(ex + "knows"), Iri(ex + "c")),
    }
    assert expected <= store.triple_set()
    assert len(store.triples) == 5
    literals = [o for _, _, o in store if isinstance(o, Literal)]
    assert {lit.lexical for lit in literals} == {"2.5764", "231-635-3"}


def test_decimal_and_string_tokens_survive_verbatim():
    doc = '@prefix ex: <https://e.org/#> .\nex:s ex:p 2.5764 ; ex:q "231-635-3" .\n'
    out = serialize_turtle(parse_turtle(doc))
    assert "2.5764" in out
    assert '"231-635-3"' in out
    # and not as a float-normalized form
    assert "2.58" not in out and "2.5764000" not in out


@pytest.mark.parametrize("path", ALL_TTL, ids=lambda p: p.stem)
def test_round_trip_isomorphic(path):
    original = parse_turtle(path.read_text())
    reserialized = parse_turtle(serialize_turtle(original))
    assert isomorphic(original, reserialized)
    assert len(original.triples) == len(reserialized.triples)


def test_round_trip_twice_is_stable():
    for path in ALL_TTL:
        once = serialize_turtle(parse_turtle(path.read_text()))
        twice = serialize_turtle(parse_turtle(once))
        assert once == twice, path.name


# -- syntax forms -------------------------------------------------------


def test_semicolon_comma_and_a_shorthand():
    doc = "@prefix ex: <https://e.org/#> .\nex:s a ex:T ; ex:p ex:o1 , ex:o2 .\n"
    store = parse_turtle(doc)
    assert len(store.triples) == 3


def test_full_iri_and_prefixed_name_are_the_same_node():
    doc = "@prefix ex: <https://e.org/#> .\nex:s ex:p <https://e.org/#s> .\n"
    (triple,) = parse_turtle(doc).triples
    assert triple[0] == triple[2]


def test_anonymous_and_labeled_blank_nodes():
    doc = (
        "@prefix ex: <https://e.org/#> .\n"
        "ex:s ex:p [ a ex:T ; ex:q ex:o ] .\n"
        "_:mine ex:p ex:o .\n"
    )
    store = parse_turtle(doc)
    blanks = {t for triple in store for t in (triple[0], triple[2]) if isinstance(t, BlankNode)}
    assert len({b.label for b in blanks}) == 2
    assert len(store.triples) == 4


def test_blank_node_isomorphism_ignores_labels():
    a = parse_turtle("@prefix ex: <https://e.org/#> .\n_:x ex:p _:y . _:y ex:p _:x .\n")
    b = parse_turtle("@prefix ex: <https://e.org/#> .\n_:n1 ex:p _:n2 . _:n2 ex:p _:n1 .\n")
    assert isomorphic(a, b)


def test_non_isomorphic_when_structure_differs():
    a = parse_turtle("@prefix ex: <https://e.org/#> .\n_:x ex:p _:x .\n")
    b = parse_turtle("@prefix ex: <https://e.org/#> .\n_:x ex:p _:y .\n")
    assert not isomorphic(a, b)


def test_integer_literal_round_trips_through_bare_token():
    doc = (
        "@prefix ex: <https://e.org/#> .\n"
        "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
        'ex:s ex:p "42"^^xsd:integer .\n'
    )
    store = parse_turtle(doc)
    (triple,) = store.triples
    assert isinstance(triple[2], Literal)
    assert triple[2].lexical == "42"
    assert triple[2].datatype.endswith("integer")
    out = serialize_turtle(store)
    assert "ex:s ex:p 42 ." in out
    assert parse_turtle(out).triple_set() == store.triple_set()


def test_opaque_datatype_is_preserved():
    doc = (
        "@prefix ex: <https://e.org/#> .\n"
        "@prefix unit: <http://qudt.org/vocab/unit/#> .\n"
        'ex:s ex:p "2.5764"^^unit:KiloGM .\n'
    )
    out = serialize_turtle(parse_turtle(doc))
    assert '"2.5764"^^unit:KiloGM' in out


def test_duplicate_triples_are_stored_once():
    doc = "@prefix ex: <https://e.org/#> .\nex:s ex:p ex:o .\nex:s ex:p ex:o .\n"
    assert len(parse_turtle(doc).triples) == 1


def test_document_order_is_preserved():
    doc = "@prefix ex: <https://e.org/#> .\nex:b ex:p ex:o .\nex:a ex:p ex:o .\n"
    subjects = [t[0].value for t in parse_turtle(doc).triples]
    assert subjects == ["https://e.org/#b", "https://e.org/#a"]


# -- errors -------------------------------------------------------------


@pytest.mark.parametrize(
    "bad",
    [
        "ex:s ex:p ex:o .",  # prefix never declared
        "@prefix ex: <https://e.org/#> .\nex:s ex:p .\n",  # missing object
        "@prefix ex: <https://e.org/#> .\nex:s ex:p <unterminated \n",
        '@prefix ex: <https://e.org/#> .\nex:s ex:p "open string .\n',
        "@prefix ex: <https://e.org/#> .\nex:s ex:p ex:o\n",  # missing final dot
    ],
)
def test_malformed_documents_raise(bad):
    with pytest.raises(ParseError):
        parse_turtle(bad)


# -- prefix map ---------------------------------------------------------


def test_prefix_expand_and_compact():
    prefixes = PrefixMap({"ex": "https://e.org/#"})
    assert prefixes.expand("ex:thing") == "https://e.org/#thing"
    assert prefixes.compact("https://e.org/#thing") == "ex:thing"
    assert prefixes.compact("https://elsewhere.org/#x") is None
    with pytest.raises(KeyError):
        prefixes.expand("nope:thing")


def test_compact_prefers_longest_base():
    prefixes = PrefixMap({"a": "https://e.org/", "ab": "https://e.org/deep#"})
    assert prefixes.compact("https://e.org/deep#x") == "ab:x"


def test_store_with_triples_appends_without_mutating():
    base = parse_turtle("@prefix ex: <https://e.org/#> .\nex:s ex:p ex:o .\n")
    grown = base.with_triples([(Iri("https://e.org/#s2"), Iri("https://e.org/#p"), Iri("https://e.org/#o"))])
    assert len(base.triples) == 1
    assert len(grown.triples) == 2

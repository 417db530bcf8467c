"""Rewrite rules: parsing, existential checking, skolem materialization."""

from pathlib import Path

import pytest

from alignforge.namespaces import DEFAULT_PREFIXES
from alignforge.rules import (
    EdgeAtom,
    RuleSyntaxError,
    TypeAtom,
    check,
    materialize,
    parse_rules,
    rule_text,
)
from alignforge.scenario import local_name
from alignforge.turtle_io import PrefixMap, isomorphic
from alignforge.workspace import load_scenario, merge_graphs

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
PREFIXES = PrefixMap(DEFAULT_PREFIXES)


@pytest.fixture(scope="module")
def rules():
    doc = (FIXTURES / "rules" / "molmod_alignment.rules").read_text()
    return parse_rules(doc, PREFIXES)


@pytest.fixture(scope="module")
def source():
    return load_scenario(FIXTURES / "scenarios" / "molmod_source.ttl")


@pytest.fixture(scope="module")
def merged(source):
    transposed = load_scenario(FIXTURES / "scenarios" / "molmod_transposed.ttl")
    return merge_graphs([source, transposed])


@pytest.fixture(scope="module")
def taxonomy(golden_bundle):
    return golden_bundle.taxonomy


# -- parsing -----------------------------------------------------------------


def test_fixture_rules_parse(rules):
    assert [r.name for r in rules] == ["involves_shared_model", "paradigmatic_content_model"]
    first = rules[0]
    assert len(first.antecedent) == 3
    assert isinstance(first.antecedent[0], EdgeAtom)
    assert isinstance(first.antecedent[1], TypeAtom)
    assert [decl.variable for decl in first.fresh] == ["?m"]
    assert first.fresh[0].class_iri.endswith("models#model")
    assert len(first.consequent_edges) == 2


def test_rule_text_round_trips(rules):
    text = rule_text(rules, PREFIXES)
    assert parse_rules(text, PREFIXES) == rules
    # deterministic re-rendering
    assert rule_text(parse_rules(text, PREFIXES), PREFIXES) == text


def test_unbound_consequent_variable_is_rejected():
    doc = (
        "rule broken {\n"
        "  when { edge(?x, vov:involves, ?y); }\n"
        "  ensure { edge(?x, vov:involves, ?stranger); }\n"
        "}\n"
    )
    with pytest.raises(RuleSyntaxError, match="stranger"):
        parse_rules(doc, PREFIXES)


def test_syntax_error_carries_line_number():
    doc = "rule broken {\n  when { edge(?x, vov:involves ?y); }\n  ensure { }\n}\n"
    with pytest.raises(RuleSyntaxError) as err:
        parse_rules(doc, PREFIXES)
    assert err.value.line == 2


def test_unknown_prefix_in_rule_errors():
    doc = "rule r { when { edge(?x, nope:p, ?y); } ensure { edge(?x, nope:p, ?y); } }"
    with pytest.raises(RuleSyntaxError):
        parse_rules(doc, PREFIXES)


# -- checking -----------------------------------------------------------------


def test_rule_violated_on_source_only(rules, source, taxonomy):
    result = check(rules[1], source, taxonomy)
    assert not result.satisfied
    assert len(result.bindings) == 1
    (binding,) = result.violated
    assert local_name(binding["?x"]) == "NH3_POTENTIAL"
    assert local_name(binding["?y"]) == "AMMONIA"


def test_rule_satisfied_on_merged_graph(rules, merged, taxonomy):
    for rule in rules:
        result = check(rule, merged, taxonomy)
        assert result.satisfied, rule.name
        assert len(result.bindings) == 1


def test_antecedent_matching_uses_subsumption(rules, source, taxonomy):
    # NH3_RIGID_UNIT is typed viso-am:rigid_object; the rule asks for
    # viso:model_object, its superclass.
    result = check(rules[0], source, taxonomy)
    assert len(result.bindings) == 1
    assert local_name(result.bindings[0]["?y"]) == "NH3_RIGID_UNIT"


def test_same_variable_must_bind_same_node(taxonomy, source):
    doc = "rule loop { when { edge(?x, viso:has_part, ?x); } ensure { edge(?x, viso:has_part, ?x); } }"
    (rule,) = parse_rules(doc, PREFIXES)
    assert check(rule, source, taxonomy).bindings == []


# -- materialization ------------------------------------------------------------


def test_materialize_then_check_then_noop(rules, source, taxonomy):
    rule = rules[1]
    assert not check(rule, source, taxonomy).satisfied

    enriched, report = materialize(rule, source, taxonomy)
    assert len(report.created) == 1
    assert check(rule, enriched, taxonomy).satisfied
    # source graph is untouched
    assert not check(rule, source, taxonomy).satisfied

    again, second_report = materialize(rule, enriched, taxonomy)
    assert second_report.created == []
    assert again.store.triple_set() == enriched.store.triple_set()
    assert isomorphic(again.store, enriched.store)


def test_materialized_witness_is_typed_and_linked(rules, source, taxonomy):
    enriched, report = materialize(rules[0], source, taxonomy)
    (skolems,) = [sk for _, sk in report.created]
    witness = skolems["?m"]
    assert witness.startswith("_:sk_involves_shared_model_")
    labels = enriched.raw_labels(witness)
    assert any(label.endswith("models#model") for label in labels)
    targets = {o for s, p, o in enriched.edges if s == witness}
    assert {local_name(t) for t in targets} == {"NH3_POTENTIAL", "NH3_RIGID_UNIT"}


def test_skolem_names_are_deterministic(rules, source, taxonomy):
    _, first = materialize(rules[0], source, taxonomy)
    _, second = materialize(rules[0], source, taxonomy)
    assert first.created == second.created


def test_fresh_without_class_ranges_over_existing_nodes(taxonomy, merged):
    # An untyped witness requirement is satisfiable by any node, so a
    # rule asking for one where an edge already exists must be satisfied.
    doc = (
        "rule untyped { when { edge(?x, vov:involves, ?y); } "
        "ensure { fresh ?w; edge(?x, vov:involves, ?w); } }"
    )
    (rule,) = parse_rules(doc, PREFIXES)
    assert check(rule, merged, taxonomy).satisfied

"""Human-steered ontology alignment workbench.

The package turns two differently annotated simulation scenarios plus
their ontologies into a reviewed alignment: it proposes correspondence
candidates, checks each one logically, structurally, and against the
scenario data, walks them through relaxation/strengthening moves under
a human's control, and exports the accepted set as OWL triples plus
rewrite rules for the part OWL cannot express.
"""

from .analysis import (
    MetricsReport,
    TierReport,
    alignment_from_store,
    discover_categories,
    score,
    tier_check,
)
from .engine import (
    AlignmentEntry,
    AlignmentSession,
    AlignmentSet,
    Correspondence,
    EngineError,
    Move,
    Proposal,
    ValidityReport,
    canonicalize,
    classify_expressibility,
    correspondence_rule,
    generate_candidates,
    parse_hints,
    serialize_alignment,
)
from .rules import (
    MatchResult,
    MaterializeReport,
    RewriteRule,
    RuleSyntaxError,
    check,
    materialize,
    parse_rules,
    rule_text,
)
from .scenario import (
    ScenarioError,
    ScenarioGraph,
    eval_term,
    export_class_list,
    from_triples,
    import_csv,
    instances_of,
)
from .taxonomy import (
    ModelError,
    OntologyBundle,
    Taxonomy,
    build_taxonomy,
    load_bundle,
    neighbors,
    property_subsumes,
    subsumes,
)
from .terms import (
    Atom,
    Chain,
    Intersection,
    Inverse,
    ObjectRestriction,
    SubjectRestriction,
    TermSyntaxError,
    normalize,
    parse_term,
    structural_subsumption,
    term_equal,
    term_text,
)
from .turtle_io import (
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
from .workspace import WorkbenchSession, fixtures_root, open_session, replay

__version__ = "0.1.0"

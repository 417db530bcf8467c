"""Shared namespace table and well-known IRIs.

Every internal data structure stores absolute IRIs; prefixed names only
exist at the parsing and serialization boundary.  The table below is the
default compaction map used whenever a fixture does not declare its own
prefixes.
"""

from __future__ import annotations

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"

RDF_TYPE = RDF + "type"
RDFS_SUBCLASSOF = RDFS + "subClassOf"
RDFS_SUBPROPERTYOF = RDFS + "subPropertyOf"
OWL_CLASS = OWL + "Class"
OWL_OBJECT_PROPERTY = OWL + "ObjectProperty"
OWL_DATATYPE_PROPERTY = OWL + "DatatypeProperty"
OWL_EQUIVALENT_CLASS = OWL + "equivalentClass"
OWL_EQUIVALENT_PROPERTY = OWL + "equivalentProperty"

XSD_STRING = XSD + "string"
XSD_DECIMAL = XSD + "decimal"
XSD_INTEGER = XSD + "integer"

# Synthetic root sitting above the root classes of all loaded ontologies.
# It is never serialized into an alignment artifact.
TOP = "urn:x-alignforge:top"

# Marker class: the fundamental paradigmatic categories tag themselves with
# it inside the category-ontology fixture, so the tier check can discover
# them instead of hardcoding a list.
FUNDAMENTAL_CATEGORY_MARKER = "https://purl.vimmp.eu/semantics/evmpo#fundamental_paradigmatic_category"
ANNOTATION_CLASS = "https://purl.vimmp.eu/semantics/evmpo#annotation"

DEFAULT_PREFIXES: dict[str, str] = {
    "rdf": RDF,
    "rdfs": RDFS,
    "owl": OWL,
    "xs": XSD,
    "evmpo": "https://purl.vimmp.eu/semantics/evmpo#",
    "osmo": "https://purl.vimmp.eu/semantics/osmo#",
    "viso": "https://purl.vimmp.eu/semantics/viso#",
    "viso-am": "https://purl.vimmp.eu/semantics/viso-am#",
    "vov": "https://purl.vimmp.eu/semantics/vov#",
    "emmo-mereotopology": "http://emmo.info/emmo/mereotopology#",
    "emmo-material": "http://emmo.info/emmo/material#",
    "emmo-models": "http://emmo.info/emmo/models#",
    "emmo-semiotics": "http://emmo.info/emmo/semiotics#",
    "emmo-graphical": "http://emmo.info/emmo/graphical#",
    "emmo-processual": "http://emmo.info/emmo/processual#",
    "emmo-properties": "http://emmo.info/emmo/properties#",
    "molmod": "https://example.org/scenarios/molmod#",
    "qudt-unit": "http://qudt.org/vocab/unit#",
    "icaltzd": "http://www.w3.org/2002/12/cal/icaltzd#",
    "iao": "http://purl.obolibrary.org/obo/",
    "csp": "https://example.org/scenarios/csp#",
}

"""Namespace constants and CURIE helpers for the vocabularies the store speaks."""

from __future__ import annotations


class Namespace:
    """Attribute-style IRI minting: ``CORE.title`` -> ``<prefix>title``."""

    def __init__(self, prefix: str):
        self._prefix = prefix

    def __getattr__(self, local: str) -> str:
        if local.startswith("_"):
            raise AttributeError(local)
        return self._prefix + local

    def term(self, local: str) -> str:
        return self._prefix + local

    def __str__(self) -> str:
        return self._prefix

    def __contains__(self, iri: object) -> bool:
        return isinstance(iri, str) and iri.startswith(self._prefix)


CORE = Namespace("http://knowledgereefsystems.com/2007/11/core#")
RELATION = Namespace("http://knowledgereefsystems.com/2008/02/relation#")
RDF = Namespace("http://www.w3.org/1999/02/22-rdf-syntax-ns#")
RDFS = Namespace("http://www.w3.org/2000/01/rdf-schema#")
OWL = Namespace("http://www.w3.org/2002/07/owl#")
XSD = Namespace("http://www.w3.org/2001/XMLSchema#")
DC = Namespace("http://purl.org/dc/elements/1.1/")

#: Namespaces that make up the schema level of the graph.  Walks meant for
#: instance data must not wander into nodes minted from these.
SCHEMA_NAMESPACES = (CORE, RELATION, RDF, RDFS, OWL, XSD)

PREFIXES = {
    "core": str(CORE),
    "relation": str(RELATION),
    "rdf": str(RDF),
    "rdfs": str(RDFS),
    "owl": str(OWL),
    "xsd": str(XSD),
    "dc": str(DC),
}


def expand_curie(value: str) -> str:
    """Expand ``core:title`` style CURIEs; absolute IRIs pass through unchanged."""
    head, sep, tail = value.partition(":")
    if sep and head in PREFIXES and not tail.startswith("//"):
        return PREFIXES[head] + tail
    return value


def compact_iri(iri: str) -> str:
    """Best-effort inverse of :func:`expand_curie`, for display only."""
    for prefix, ns in PREFIXES.items():
        if iri.startswith(ns):
            return f"{prefix}:{iri[len(ns):]}"
    return iri


def is_schema_iri(iri: str) -> bool:
    """True for IRIs living in one of the vocabulary namespaces."""
    return any(iri in ns for ns in SCHEMA_NAMESPACES)

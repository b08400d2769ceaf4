"""Quad store, grammar-constrained energy walker, and scholarly recommenders."""

from .analytics import MetricReport, citation_count, co_usage, h_index, impact_factor
from .ingest import DCRecord, IngestStats, ingest_records, parse_oaipmh, translate
from .nquads import NQuadsParseError, parse_nquads, serialize_nquads
from .recommenders import (
    NewsRequest,
    RefereeRequest,
    UnknownGrammarError,
    discover,
    load_named_grammar,
    news,
    referees,
)
from .store import DEFAULT_GRAPH, QuadStore
from .tagging import TagEdge, record_usage, tag
from .terms import IRI, BlankNode, Literal, Quad, Term
from .vocab import Vocabulary, is_instance, load_vocabulary
from .walker import (
    EmptySeedsError,
    Grammar,
    GrammarStep,
    RankedList,
    UnknownPredicateError,
    WalkerConfig,
    WalkerEngine,
    adjacency_matrix,
    coauthorship_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BlankNode",
    "DCRecord",
    "DEFAULT_GRAPH",
    "EmptySeedsError",
    "Grammar",
    "GrammarStep",
    "IRI",
    "IngestStats",
    "Literal",
    "MetricReport",
    "NQuadsParseError",
    "NewsRequest",
    "Quad",
    "QuadStore",
    "RankedList",
    "RefereeRequest",
    "TagEdge",
    "Term",
    "UnknownGrammarError",
    "UnknownPredicateError",
    "Vocabulary",
    "WalkerConfig",
    "WalkerEngine",
    "adjacency_matrix",
    "citation_count",
    "co_usage",
    "coauthorship_matrix",
    "discover",
    "h_index",
    "impact_factor",
    "ingest_records",
    "is_instance",
    "load_named_grammar",
    "load_vocabulary",
    "news",
    "parse_nquads",
    "parse_oaipmh",
    "record_usage",
    "referees",
    "serialize_nquads",
    "tag",
    "translate",
]

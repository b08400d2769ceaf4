"""Weighted concept tags and view-transition tracking, reified per user graph.

A user's graph IRI doubles as their identity: every association they create
is written to their own graph.  Because the graph position already names the
owner, associations are reified as blank nodes carrying subject/object/
attribute edges rather than rdf:Statement triples.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from datetime import datetime, timezone

from .namespaces import CORE, RDF, RELATION
from .store import QuadStore
from .terms import (
    IRI,
    BlankNode,
    Literal,
    Quad,
    Term,
    datetime_literal,
    float_literal,
    parse_datetime,
    string_literal,
)

_RDF_TYPE = IRI(RDF.type)
_RELATED = IRI(RELATION.related)
_USAGE = IRI(RELATION.usage)
_SUBJECT = IRI(CORE.subject)
_OBJECT = IRI(CORE.object)
_WEIGHT = IRI(CORE.weight)
_INSERT_TIME = IRI(CORE.insertTime)
_USAGE_STAMPS = IRI(CORE.usageStamps)


@dataclass(frozen=True, slots=True)
class TagEdge:
    """One relation:related association: owner tagged ``resource`` as ``concept``."""

    node: BlankNode
    owner: Term
    concept: Term
    resource: Term
    weight: float
    insert_time: datetime


def _stable_node(kind: str, graph: Term, a: Term, b: Term) -> BlankNode:
    digest = hashlib.sha1(f"{graph.nq()}|{a.nq()}|{b.nq()}".encode()).hexdigest()[:16]
    return BlankNode(f"{kind}{digest}")


def tag(
    store: QuadStore,
    user: Term,
    concept: Term,
    resource: Term,
    weight: float,
    at: datetime | None = None,
) -> BlankNode:
    """Record that ``user`` relates ``concept`` to ``resource`` with ``weight``.

    Weight is a similarity strength in [0, 1].  One association node exists
    per (user, concept, resource); re-tagging updates its weight and insert
    time.  Returns the association node.
    """
    if not 0.0 <= weight <= 1.0:
        raise ValueError(f"tag weight must be in [0, 1], got {weight}")
    if at is None:
        at = datetime.now(timezone.utc)
    node = _stable_node("rel", user, concept, resource)
    existing = store.match(s=node, g=user)
    for quad in existing:
        if quad.p in (_WEIGHT, _INSERT_TIME):
            store.remove(quad)
    store.insert(Quad(node, _RDF_TYPE, _RELATED, user))
    store.insert(Quad(node, _SUBJECT, concept, user))
    store.insert(Quad(node, _OBJECT, resource, user))
    store.insert(Quad(node, _WEIGHT, float_literal(weight), user))
    store.insert(Quad(node, _INSERT_TIME, datetime_literal(at), user))
    return node


def record_usage(
    store: QuadStore, user: Term, source: Term, target: Term, at: datetime
) -> BlankNode | None:
    """Append a view transition source -> target to the user's usage trail.

    A single usage node exists per (user, source, target); each call appends
    one timestamp.  Self-transitions are ignored and return None.
    """
    if source == target:
        return None
    node = _stable_node("use", user, source, target)
    store.insert(Quad(node, _RDF_TYPE, _USAGE, user))
    store.insert(Quad(node, _SUBJECT, source, user))
    store.insert(Quad(node, _OBJECT, target, user))
    store.insert(Quad(node, _USAGE_STAMPS, string_literal(datetime_literal(at).lexical), user))
    return node


def _node_attr(store: QuadStore, node: Term, pred: IRI, graph: Term | None = None) -> Term | None:
    quads = store.match(s=node, p=pred, g=graph)
    return quads[0].o if quads else None


def _edge_from_node(store: QuadStore, node: Term, graph: Term) -> TagEdge | None:
    concept = _node_attr(store, node, _SUBJECT, graph)
    resource = _node_attr(store, node, _OBJECT, graph)
    weight = _node_attr(store, node, _WEIGHT, graph)
    inserted = _node_attr(store, node, _INSERT_TIME, graph)
    if concept is None or resource is None:
        return None
    return TagEdge(
        node=node,  # type: ignore[arg-type]
        owner=graph,
        concept=concept,
        resource=resource,
        weight=float(weight.lexical) if isinstance(weight, Literal) else 1.0,
        insert_time=parse_datetime(inserted.lexical)
        if isinstance(inserted, Literal)
        else datetime.fromtimestamp(0, timezone.utc),
    )


def tags_by_owner(store: QuadStore, owner: Term, concept: Term | None = None) -> list[TagEdge]:
    """Associations asserted in ``owner``'s graph, optionally for one concept."""
    edges = []
    for quad in store.match(p=_RDF_TYPE, o=_RELATED, g=owner):
        edge = _edge_from_node(store, quad.s, owner)
        if edge is not None and (concept is None or edge.concept == concept):
            edges.append(edge)
    edges.sort(key=lambda e: (e.concept.sort_key(), e.resource.sort_key()))
    return edges


def tags_on_resource(store: QuadStore, resource: Term) -> list[TagEdge]:
    """Every association, in any graph, whose object is ``resource``."""
    edges = []
    for quad in store.match(p=_OBJECT, o=resource):
        if Quad(quad.s, _RDF_TYPE, _RELATED, quad.g) in store:
            edge = _edge_from_node(store, quad.s, quad.g)
            if edge is not None:
                edges.append(edge)
    edges.sort(key=lambda e: (e.owner.sort_key(), e.concept.sort_key()))
    return edges


def concepts_of(store: QuadStore, owner: Term) -> list[Term]:
    """Distinct concepts the owner has tagged with, sorted."""
    seen = {e.concept for e in tags_by_owner(store, owner)}
    return sorted(seen, key=Term.sort_key)


def usage_stamps(store: QuadStore, user: Term, source: Term, target: Term) -> list[str]:
    node = _stable_node("use", user, source, target)
    stamps = [
        q.o.lexical
        for q in store.match(s=node, p=_USAGE_STAMPS, g=user)
        if isinstance(q.o, Literal)
    ]
    return sorted(stamps)


def usage_neighbors(store: QuadStore, node: Term, direction: str) -> list[tuple[Term, int]]:
    """Resources adjacent to ``node`` in anyone's usage trail.

    ``out`` follows recorded transitions node -> x, ``in`` the reverse.
    Returns (neighbor, total stamp count across users), sorted by neighbor.
    """
    here, there = (_SUBJECT, _OBJECT) if direction == "out" else (_OBJECT, _SUBJECT)
    counts: dict[Term, int] = {}
    for quad in store.match(p=here, o=node):
        usage_node = quad.s
        if Quad(usage_node, _RDF_TYPE, _USAGE, quad.g) not in store:
            continue
        other = _node_attr(store, usage_node, there, quad.g)
        if other is None:
            continue
        n_stamps = len(store.match(s=usage_node, p=_USAGE_STAMPS, g=quad.g))
        counts[other] = counts.get(other, 0) + n_stamps
    return sorted(counts.items(), key=lambda item: item[0].sort_key())

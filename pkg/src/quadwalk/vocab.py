"""Built-in scholarly vocabulary plus the two supported RDFS inference rules.

The class tree and property tables ship as data.  Inference is deliberately
restricted to subclass/subproperty closure; domain/range declarations are
used for validation diagnostics only, never to entail types.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .namespaces import CORE, OWL, RDF, RDFS, RELATION, XSD
from .store import QuadStore
from .terms import IRI, Literal, Quad, Term


class UnknownClassError(KeyError):
    pass


class UnknownPropertyError(KeyError):
    pass


@dataclass(frozen=True, slots=True)
class PropertyDef:
    iri: str
    domain: str
    range: str


@dataclass
class Vocabulary:
    """Class tree, property table, and display abbreviations.

    ``subclass_of`` / ``subproperty_of`` map a child IRI to its parent IRIs;
    both graphs must be acyclic.
    """

    root: str
    subclass_of: dict[str, tuple[str, ...]]
    properties: dict[str, PropertyDef]
    subproperty_of: dict[str, tuple[str, ...]]
    abbrev: dict[str, str]
    _class_cache: dict[str, frozenset[str]] = field(default_factory=dict, repr=False)
    _prop_cache: dict[str, frozenset[str]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        _check_acyclic(self.subclass_of, "subClassOf")
        _check_acyclic(self.subproperty_of, "subPropertyOf")
        seen: dict[str, str] = {}
        for cls, ab in self.abbrev.items():
            if len(ab) != 2:
                raise ValueError(f"abbreviation for {cls} is not 2 characters: {ab!r}")
            if ab in seen:
                raise ValueError(f"abbreviation {ab!r} reused by {cls} and {seen[ab]}")
            seen[ab] = cls

    @property
    def classes(self) -> frozenset[str]:
        return frozenset(self.subclass_of) | {self.root}

    def is_class(self, iri: str) -> bool:
        return iri == self.root or iri in self.subclass_of

    def subclass_closure(self, cls: str) -> frozenset[str]:
        """The class plus all transitive ancestors (reflexive closure)."""
        cached = self._class_cache.get(cls)
        if cached is None:
            if not self.is_class(cls):
                raise UnknownClassError(cls)
            cached = _ancestors(self.subclass_of, cls)
            self._class_cache[cls] = cached
        return cached

    def subproperty_closure(self, prop: str) -> frozenset[str]:
        cached = self._prop_cache.get(prop)
        if cached is None:
            if prop not in self.properties and prop not in self.subproperty_of:
                raise UnknownPropertyError(prop)
            cached = _ancestors(self.subproperty_of, prop)
            self._prop_cache[prop] = cached
        return cached

    def domain(self, prop: str) -> str:
        try:
            return self.properties[prop].domain
        except KeyError:
            raise UnknownPropertyError(prop) from None

    def range(self, prop: str) -> str:
        try:
            return self.properties[prop].range
        except KeyError:
            raise UnknownPropertyError(prop) from None

    def abbreviation(self, cls: str) -> str | None:
        return self.abbrev.get(cls)

    def to_quads(self, graph: IRI = IRI("urn:quadwalk:graph:vocabulary")) -> list[Quad]:
        """The vocabulary itself as quads, for inspection or export."""
        quads: list[Quad] = []
        rdf_type = IRI(RDF.type)
        for cls, parents in sorted(self.subclass_of.items()):
            quads.append(Quad(IRI(cls), rdf_type, IRI(OWL.Class), graph))
            for parent in parents:
                quads.append(Quad(IRI(cls), IRI(RDFS.subClassOf), IRI(parent), graph))
            ab = self.abbrev.get(cls)
            if ab:
                quads.append(Quad(IRI(cls), IRI(CORE.abbreviation), Literal(ab), graph))
        for prop in sorted(self.properties):
            pd = self.properties[prop]
            quads.append(Quad(IRI(prop), rdf_type, IRI(RDF.Property), graph))
            quads.append(Quad(IRI(prop), IRI(RDFS.domain), IRI(pd.domain), graph))
            quads.append(Quad(IRI(prop), IRI(RDFS.range), IRI(pd.range), graph))
            for parent in self.subproperty_of.get(prop, ()):
                quads.append(Quad(IRI(prop), IRI(RDFS.subPropertyOf), IRI(parent), graph))
        return quads


def _check_acyclic(parents: dict[str, tuple[str, ...]], name: str):
    state: dict[str, int] = {}  # 1 = in progress, 2 = done

    def visit(node: str):
        mark = state.get(node)
        if mark == 2:
            return
        if mark == 1:
            raise ValueError(f"{name} hierarchy has a cycle through {node}")
        state[node] = 1
        for parent in parents.get(node, ()):
            visit(parent)
        state[node] = 2

    for node in parents:
        visit(node)


def _ancestors(parents: dict[str, tuple[str, ...]], start: str) -> frozenset[str]:
    out = {start}
    stack = [start]
    while stack:
        for parent in parents.get(stack.pop(), ()):
            if parent not in out:
                out.add(parent)
                stack.append(parent)
    return frozenset(out)


def _core_tree() -> dict[str, tuple[str, ...]]:
    t = {}
    t[CORE.Reefsource] = (OWL.Thing,)
    for cls in ("Agent", "Item", "Event", "Concept", "Gender"):
        t[CORE.term(cls)] = (CORE.Reefsource,)
    t[CORE.Person] = (CORE.Agent,)
    t[CORE.Group] = (CORE.Agent,)
    for cls in ("Document", "Collection", "Call", "FundingOpportunity"):
        t[CORE.term(cls)] = (CORE.Item,)
    t[CORE.Article] = (CORE.Document,)
    t[CORE.Webpage] = (CORE.Document,)
    t[CORE.Library] = (CORE.Collection,)
    # Reified association classes; associations are themselves resources.
    t[RELATION.Relation] = (CORE.Reefsource,)
    t[RELATION.related] = (RELATION.Relation,)
    t[RELATION.usage] = (RELATION.Relation,)
    return t


_ABBREVS = {
    OWL.Thing: "Th",
    CORE.Reefsource: "Re",
    CORE.Agent: "Ag",
    CORE.Person: "Pe",
    CORE.Group: "Gr",
    CORE.Item: "It",
    CORE.Document: "Do",
    CORE.Article: "Ar",
    CORE.Webpage: "We",
    CORE.Collection: "Cl",
    CORE.Library: "Li",
    CORE.Call: "Ca",
    CORE.FundingOpportunity: "Fu",
    CORE.Event: "Ev",
    CORE.Concept: "Co",
    CORE.Gender: "Ge",
    RELATION.Relation: "Rn",
    RELATION.related: "Rl",
    RELATION.usage: "Us",
}


def _core_properties() -> dict[str, PropertyDef]:
    rows = [
        # Reefsource
        (CORE.title, CORE.Reefsource, XSD.string),
        (CORE.abstract, CORE.Reefsource, XSD.string),
        (CORE.guid, CORE.Reefsource, XSD.string),
        (CORE.url, CORE.Reefsource, XSD.anyURI),
        # Agent
        (CORE.attends, CORE.Agent, CORE.Event),
        (CORE.created, CORE.Agent, CORE.Item),
        (CORE.member, CORE.Group, CORE.Person),
        (CORE.subGroup, CORE.Group, CORE.Group),
        (CORE.firstName, CORE.Person, XSD.string),
        (CORE.lastName, CORE.Person, XSD.string),
        (CORE.occupation, CORE.Person, XSD.string),
        (CORE.sex, CORE.Person, CORE.Gender),
        # Item family
        (CORE.cites, CORE.Item, CORE.Item),
        (CORE.containedIn, CORE.Item, CORE.Collection),
        (CORE.creationTime, CORE.Item, XSD.dateTime),
        (CORE.doi, CORE.Item, XSD.anyURI),
        (CORE.publisher, CORE.Item, CORE.Group),
        (CORE.dueDate, CORE.Call, XSD.dateTime),
        (CORE.callFor, CORE.Call, CORE.Reefsource),
        (CORE.contains, CORE.Collection, CORE.Item),
        (CORE.editor, CORE.Collection, CORE.Agent),
        (CORE.isbn, CORE.Collection, XSD.anyURI),
        (CORE.issn, CORE.Collection, XSD.anyURI),
        (CORE.oaipmh, CORE.Library, XSD.anyURI),
        (CORE.startPage, CORE.Article, XSD.int),
        (CORE.endPage, CORE.Article, XSD.int),
        (CORE.number, CORE.Article, XSD.int),
        (CORE.volume, CORE.Article, XSD.int),
        # Event
        (CORE.startTime, CORE.Event, XSD.dateTime),
        (CORE.endTime, CORE.Event, XSD.dateTime),
        (CORE.presents, CORE.Event, CORE.Item),
        (CORE.organizedBy, CORE.Event, CORE.Agent),
        (CORE.subEvent, CORE.Event, CORE.Event),
        # Reified associations
        (CORE.subject, RELATION.Relation, CORE.Reefsource),
        (CORE.object, RELATION.Relation, CORE.Reefsource),
        (CORE.weight, RELATION.related, XSD.float),
        (CORE.insertTime, RELATION.related, XSD.dateTime),
        (CORE.usageStamps, RELATION.usage, XSD.string),
    ]
    return {iri: PropertyDef(iri, dom, rng) for iri, dom, rng in rows}


@lru_cache(maxsize=1)
def load_vocabulary() -> Vocabulary:
    """The built-in core + relation vocabulary.  Immutable after load."""
    return Vocabulary(
        root=OWL.Thing,
        subclass_of=_core_tree(),
        properties=_core_properties(),
        subproperty_of={},
        abbrev=dict(_ABBREVS),
    )


def subclass_closure(vocab: Vocabulary, cls: str) -> frozenset[str]:
    return vocab.subclass_closure(cls)


def asserted_types(store: QuadStore, resource: Term) -> list[str]:
    """rdf:type objects of a resource, across all graphs, IRIs only."""
    return [t.value for t in store.neighbors(resource, IRI(RDF.type), "out") if isinstance(t, IRI)]


def is_instance(store: QuadStore, vocab: Vocabulary, resource: Term, cls: str) -> bool:
    """True iff some asserted type of ``resource`` has ``cls`` in its closure.

    Only the subclass rule applies; domain/range declarations never entail
    membership.  Everything trivially belongs to the root class.
    """
    if cls == vocab.root:
        return True
    for typ in asserted_types(store, resource):
        if typ == cls:
            return True
        if vocab.is_class(typ) and cls in vocab.subclass_closure(typ):
            return True
    return False


def most_specific_class(store: QuadStore, vocab: Vocabulary, resource: Term) -> str | None:
    """Deepest asserted class (largest closure), ties broken lexicographically."""
    best: tuple[int, str] | None = None
    for typ in asserted_types(store, resource):
        if not vocab.is_class(typ):
            continue
        depth = len(vocab.subclass_closure(typ))
        # Negative depth so that a plain tuple min() prefers deeper classes.
        candidate = (-depth, typ)
        if best is None or candidate < best:
            best = candidate
    return best[1] if best else None

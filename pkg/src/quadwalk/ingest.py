"""OAI-PMH Dublin Core ingestion.

Consumes already-fetched OAI-PMH XML (GetRecord or ListRecords with an
oai_dc payload) and translates each record into quads under the provider's
named graph.  Harvesting transport is out of scope.

Dedup: articles are keyed by their OAI identifier (falling back to
normalized title + type), people by normalized full name, concepts by
normalized label.  Keys mint deterministic IRIs, so re-ingesting a record
is a no-op.
"""

from __future__ import annotations

import logging
import string
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from urllib.parse import quote

from .namespaces import CORE, RDF
from .store import QuadStore
from .tagging import tag
from .terms import IRI, Quad, Term, anyuri_literal, datetime_literal, string_literal

log = logging.getLogger(__name__)

RESOURCE_NS = "urn:scholar:"

_RDF_TYPE = IRI(RDF.type)


class OAIParseError(ValueError):
    def __init__(self, message: str, byte_offset: int | None = None):
        if byte_offset is not None:
            message = f"{message} (byte offset {byte_offset})"
        super().__init__(message)
        self.byte_offset = byte_offset


@dataclass(slots=True)
class DCRecord:
    identifier: str
    datestamp: date | None = None
    title: str = ""
    creators: list[str] = field(default_factory=list)
    subjects: list[str] = field(default_factory=list)
    description: str = ""
    date: date | None = None
    type_tag: str | None = None
    url: str | None = None


@dataclass(slots=True)
class IngestStats:
    records: int = 0
    articles_created: int = 0
    persons_created: int = 0
    concepts_created: int = 0
    quads_added: int = 0


def _local(tag_name: str) -> str:
    return tag_name.rsplit("}", 1)[-1]


def _text(element: ET.Element | None) -> str:
    if element is None or element.text is None:
        return ""
    return " ".join(element.text.split())


def _parse_date(value: str) -> date | None:
    value = value.strip()
    if not value:
        return None
    try:
        return date.fromisoformat(value[:10])
    except ValueError:
        return None


def parse_oaipmh(data: bytes | str) -> list[DCRecord]:
    """Parse OAI-PMH XML into Dublin Core records, in document order.

    Records lacking an identifier are skipped with a warning.  Malformed
    XML raises :class:`OAIParseError` carrying the byte offset.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, column = exc.position
        offset = sum(len(l) + 1 for l in data.split(b"\n")[: line - 1]) + column
        raise OAIParseError(f"malformed XML: {exc.msg} at line {line}", offset) from exc

    elements = [root] if _local(root.tag) == "record" else [
        el for el in root.iter() if _local(el.tag) == "record"
    ]
    records = []
    for el in elements:
        record = DCRecord(identifier="")
        for child in el.iter():
            name = _local(child.tag)
            if name == "identifier" and not record.identifier and _looks_like_header(child, el):
                record.identifier = _text(child)
            elif name == "datestamp":
                record.datestamp = _parse_date(_text(child))
            elif name == "title":
                record.title = _text(child)
            elif name == "creator":
                record.creators.append(_text(child))
            elif name == "subject":
                record.subjects.append(_text(child))
            elif name == "description":
                record.description = _text(child)
            elif name == "date":
                record.date = _parse_date(_text(child))
            elif name == "type":
                record.type_tag = _text(child)
        # dc:identifier (the URL) shares a local name with the OAI id;
        # take the first identifier that looks like a URL.
        for child in el.iter():
            if _local(child.tag) == "identifier":
                value = _text(child)
                if value.startswith(("http://", "https://")) and record.url is None:
                    record.url = value
        if not record.identifier:
            log.warning("skipping record without an OAI identifier")
            continue
        records.append(record)
    return records


def _looks_like_header(child: ET.Element, record_el: ET.Element) -> bool:
    """The OAI id lives under <header>; dc:identifier holds the URL."""
    for header in record_el:
        if _local(header.tag) == "header":
            return child in list(header.iter())
    # Headerless (doctored) records: accept ids that are not URLs.
    return not _text(child).startswith(("http://", "https://"))


_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


def normalize_key(value: str) -> str:
    """Canonical identity key: lowercase, punctuation stripped, spaces collapsed."""
    return " ".join(value.translate(_PUNCT_TABLE).lower().split())


def _slug(value: str) -> str:
    return quote(normalize_key(value).replace(" ", "-"), safe="-.")


def article_iri(record: DCRecord) -> IRI:
    if record.identifier:
        return IRI(RESOURCE_NS + "article:" + quote(record.identifier, safe=""))
    key = normalize_key(record.title) + "|" + (record.type_tag or "")
    return IRI(RESOURCE_NS + "article:" + quote(key, safe=""))


def person_iri(name: str) -> IRI:
    return IRI(RESOURCE_NS + "person:" + _slug(name))


def concept_iri(label: str) -> IRI:
    """Concepts are global across providers, keyed by normalized label."""
    return IRI(RESOURCE_NS + "concept:" + _slug(label))


def split_name(name: str) -> tuple[str, str]:
    """'Last, First M.' -> (first, last); comma-less names go wholly to last."""
    last, sep, first = name.partition(",")
    if not sep:
        return "", name.strip()
    return first.strip(), last.strip()


def translate(store: QuadStore, record: DCRecord, provider_graph: IRI) -> int:
    """Write one record's quads into the provider's graph; returns quads added.

    Missing fields simply omit their quads.  Existing resources (same dedup
    key) are reused, so a second pass adds nothing.
    """
    before = len(store)

    def put(s: Term, p: IRI, o: Term):
        store.insert(Quad(s, p, o, provider_graph))

    article = article_iri(record)
    put(article, _RDF_TYPE, IRI(CORE.Article))
    if record.title:
        put(article, IRI(CORE.title), string_literal(record.title))
    if record.description:
        put(article, IRI(CORE.abstract), string_literal(record.description))
    if record.url:
        put(article, IRI(CORE.url), anyuri_literal(record.url))
    if record.identifier:
        put(article, IRI(CORE.guid), string_literal(record.identifier))
    if record.date:
        midnight = datetime(record.date.year, record.date.month, record.date.day, tzinfo=timezone.utc)
        put(article, IRI(CORE.creationTime), datetime_literal(midnight))

    for name in record.creators:
        person = person_iri(name)
        put(person, _RDF_TYPE, IRI(CORE.Person))
        put(person, IRI(CORE.title), string_literal(name))
        first, last = split_name(name)
        if first:
            put(person, IRI(CORE.firstName), string_literal(first))
        if last:
            put(person, IRI(CORE.lastName), string_literal(last))
        put(person, IRI(CORE.created), article)

    # Anchor the tag time to record metadata so re-ingesting is byte-stable.
    stamp = record.datestamp or record.date
    if stamp:
        tag_time = datetime(stamp.year, stamp.month, stamp.day, tzinfo=timezone.utc)
    else:
        tag_time = datetime.fromtimestamp(0, timezone.utc)
    for label in record.subjects:
        concept = concept_iri(label)
        put(concept, _RDF_TYPE, IRI(CORE.Concept))
        put(concept, IRI(CORE.title), string_literal(label))
        tag(store, provider_graph, concept, article, 1.0, at=tag_time)
    return len(store) - before


def ingest_records(store: QuadStore, records: list[DCRecord], provider_graph: IRI) -> IngestStats:
    """Translate a batch, tallying newly created resources."""
    stats = IngestStats()
    for record in records:
        known_articles = _typed_count(store, CORE.Article, provider_graph)
        known_persons = _typed_count(store, CORE.Person, provider_graph)
        known_concepts = _typed_count(store, CORE.Concept, provider_graph)
        stats.quads_added += translate(store, record, provider_graph)
        stats.records += 1
        stats.articles_created += _typed_count(store, CORE.Article, provider_graph) - known_articles
        stats.persons_created += _typed_count(store, CORE.Person, provider_graph) - known_persons
        stats.concepts_created += _typed_count(store, CORE.Concept, provider_graph) - known_concepts
    return stats


def _typed_count(store: QuadStore, cls: str, graph: IRI) -> int:
    return len(store.match(p=_RDF_TYPE, o=IRI(cls), g=graph))

from __future__ import annotations

from datetime import date

import pytest

from quadwalk.ingest import (
    DCRecord,
    OAIParseError,
    article_iri,
    concept_iri,
    ingest_records,
    normalize_key,
    parse_oaipmh,
    person_iri,
    split_name,
    translate,
)
from quadwalk.namespaces import CORE, RDF
from quadwalk.store import QuadStore
from quadwalk.tagging import tags_by_owner
from quadwalk.terms import IRI, Literal

ARXIV = IRI("urn:scholar:graph:arxiv")


def test_parse_single_record_fields(arxiv_xml):
    records = parse_oaipmh(arxiv_xml)
    assert len(records) == 1
    rec = records[0]
    assert rec.identifier == "oai:arXiv.org:0807.2466"
    assert rec.datestamp == date(2009, 1, 7)
    assert rec.title == "A Grateful Dead Analysis..."
    assert rec.creators == ["Rodriguez, Marko A.", "Gintautas, Vadas", "Pepe, Alberto"]
    assert rec.subjects == ["Computers and Society", "General Literature", "K.4.0"]
    assert rec.description == "The Grateful Dead were an American band ..."
    assert rec.date == date(2008, 7, 15)
    assert rec.type_tag == "text"
    assert rec.url == "http:// arxiv.org/abs/0807.2466"


def test_parse_accepts_str_input(arxiv_xml):
    assert parse_oaipmh(arxiv_xml.decode("utf-8"))[0].identifier == "oai:arXiv.org:0807.2466"


def test_parse_malformed_xml_reports_byte_offset():
    bad = b"<record>\n  <header><identifier>x</identifier>\n</record>"
    with pytest.raises(OAIParseError) as err:
        parse_oaipmh(bad)
    assert err.value.byte_offset is not None
    assert 0 < err.value.byte_offset <= len(bad)
    assert "byte offset" in str(err.value)


def test_parse_skips_identifierless_records(caplog):
    xml = (
        "<ListRecords>"
        "<record><header><datestamp>2009-01-07</datestamp></header></record>"
        "<record><header><identifier>oai:x:1</identifier></header></record>"
        "</ListRecords>"
    )
    with caplog.at_level("WARNING"):
        records = parse_oaipmh(xml)
    assert [r.identifier for r in records] == ["oai:x:1"]
    assert "skipping" in caplog.text


def test_translate_produces_expected_quads(arxiv_xml):
    store = QuadStore()
    rec = parse_oaipmh(arxiv_xml)[0]
    added = translate(store, rec, ARXIV)
    # 6 article quads + 3 x 5 person quads + 3 x 2 concept quads + 3 x 5 tag quads
    assert added == 42
    assert len(store) == 42

    article = article_iri(rec)
    assert store.match(s=article, p=IRI(RDF.type), o=IRI(CORE.Article), g=ARXIV)
    title = store.match(s=article, p=IRI(CORE.title))[0].o
    assert isinstance(title, Literal) and title.lexical == "A Grateful Dead Analysis..."
    abstract = store.match(s=article, p=IRI(CORE.abstract))[0].o
    assert abstract.lexical == "The Grateful Dead were an American band ..."
    url = store.match(s=article, p=IRI(CORE.url))[0].o
    assert url.lexical == "http:// arxiv.org/abs/0807.2466"
    guid = store.match(s=article, p=IRI(CORE.guid))[0].o
    assert guid.lexical == "oai:arXiv.org:0807.2466"
    created_at = store.match(s=article, p=IRI(CORE.creationTime))[0].o
    assert created_at.lexical == "2008-07-15T00:00:00Z"


def test_translate_creates_people_with_split_names(arxiv_xml):
    store = QuadStore()
    rec = parse_oaipmh(arxiv_xml)[0]
    translate(store, rec, ARXIV)
    article = article_iri(rec)
    expectations = {
        "Rodriguez, Marko A.": ("Marko A.", "Rodriguez"),
        "Gintautas, Vadas": ("Vadas", "Gintautas"),
        "Pepe, Alberto": ("Alberto", "Pepe"),
    }
    for name, (first, last) in expectations.items():
        person = person_iri(name)
        assert store.match(s=person, p=IRI(RDF.type), o=IRI(CORE.Person), g=ARXIV)
        assert store.match(s=person, p=IRI(CORE.firstName))[0].o.lexical == first
        assert store.match(s=person, p=IRI(CORE.lastName))[0].o.lexical == last
        assert store.match(s=person, p=IRI(CORE.created), o=article)


def test_translate_tags_subjects_in_provider_graph(arxiv_xml):
    store = QuadStore()
    rec = parse_oaipmh(arxiv_xml)[0]
    translate(store, rec, ARXIV)
    edges = tags_by_owner(store, ARXIV)
    assert len(edges) == 3
    assert {e.concept for e in edges} == {
        concept_iri("Computers and Society"),
        concept_iri("General Literature"),
        concept_iri("K.4.0"),
    }
    assert all(e.resource == article_iri(rec) for e in edges)
    assert all(e.weight == 1.0 for e in edges)
    # Tag time anchors to the datestamp so re-ingest is reproducible.
    assert all(e.insert_time.isoformat() == "2009-01-07T00:00:00+00:00" for e in edges)


def test_reingest_is_a_noop(arxiv_xml):
    store = QuadStore()
    records = parse_oaipmh(arxiv_xml)
    first = ingest_records(store, records, ARXIV)
    snapshot = store.export_nquads()
    second = ingest_records(store, records, ARXIV)
    assert first.records == second.records == 1
    assert (first.articles_created, first.persons_created, first.concepts_created) == (1, 3, 3)
    assert (second.articles_created, second.persons_created, second.concepts_created) == (0, 0, 0)
    assert second.quads_added == 0
    assert store.export_nquads() == snapshot


def test_shared_author_dedupes_across_records():
    store = QuadStore()
    r1 = DCRecord(identifier="oai:x:1", title="One", creators=["Pepe, Alberto"], date=date(2008, 1, 1))
    r2 = DCRecord(identifier="oai:x:2", title="Two", creators=["Pepe,  Alberto"], date=date(2008, 2, 2))
    stats = ingest_records(store, [r1, r2], ARXIV)
    assert stats.articles_created == 2
    assert stats.persons_created == 1  # normalized name key collapses both spellings
    author = person_iri("Pepe, Alberto")
    assert len(store.match(s=author, p=IRI(CORE.created))) == 2


def test_concepts_are_global_across_providers():
    store = QuadStore()
    rec = DCRecord(identifier="oai:x:1", subjects=["Semantic Web"])
    translate(store, rec, ARXIV)
    other = IRI("urn:scholar:graph:citeseer")
    rec2 = DCRecord(identifier="oai:y:9", subjects=["semantic   web"])
    translate(store, rec2, other)
    concept = concept_iri("Semantic Web")
    types = store.match(s=concept, p=IRI(RDF.type), o=IRI(CORE.Concept))
    assert {q.g for q in types} == {ARXIV, other}
    assert concept == concept_iri("semantic   web")


def test_minted_iris_are_deterministic_and_ascii(arxiv_xml):
    rec = parse_oaipmh(arxiv_xml)[0]
    assert article_iri(rec) == IRI("urn:scholar:article:oai%3AarXiv.org%3A0807.2466")
    assert person_iri("Rodriguez, Marko A.") == IRI("urn:scholar:person:rodriguez-marko-a")
    assert concept_iri("K.4.0") == IRI("urn:scholar:concept:k40")
    assert all(ord(ch) < 128 for ch in person_iri("Gintautas, Vadas").value)


def test_article_iri_falls_back_to_title_key():
    rec = DCRecord(identifier="", title="Some  Paper", type_tag="text")
    assert article_iri(rec) == article_iri(DCRecord(identifier="", title="some paper!", type_tag="text"))


def test_normalize_key_and_split_name():
    assert normalize_key("  Hello,   WORLD!  ") == "hello world"
    assert split_name("Rodriguez, Marko A.") == ("Marko A.", "Rodriguez")
    assert split_name("Plato") == ("", "Plato")


def test_missing_fields_omit_quads():
    store = QuadStore()
    added = translate(store, DCRecord(identifier="oai:x:1"), ARXIV)
    # Only the type assertion and the guid survive an otherwise empty record.
    assert added == 2
    article = article_iri(DCRecord(identifier="oai:x:1"))
    assert store.match(s=article, p=IRI(CORE.title)) == []
    assert store.match(s=article, p=IRI(CORE.creationTime)) == []

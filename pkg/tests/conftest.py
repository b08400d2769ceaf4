from __future__ import annotations

from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest

from quadwalk.namespaces import CORE, RDF
from quadwalk.store import QuadStore
from quadwalk.tagging import tag
from quadwalk.terms import IRI, Quad

DATA_DIR = Path(__file__).parent / "data"

RDF_TYPE = IRI(RDF.type)
NOW = datetime(2008, 7, 1, tzinfo=timezone.utc)
DAY = timedelta(days=1)
SW = IRI("urn:scholar:concept:semantic-web")
JAVA = IRI("urn:scholar:concept:java")


@pytest.fixture()
def store() -> QuadStore:
    return QuadStore()


@pytest.fixture(scope="session")
def arxiv_xml() -> bytes:
    return (DATA_DIR / "arxiv_record.xml").read_bytes()


def demo(name: str) -> IRI:
    return IRI(f"urn:demo:{name}")


def add_person(store: QuadStore, name: str, graph: IRI | None = None) -> IRI:
    person = demo(name)
    store.insert(Quad(person, RDF_TYPE, IRI(CORE.Person), graph or person))
    return person


def add_article(store: QuadStore, name: str, graph: IRI) -> IRI:
    article = demo(name)
    store.insert(Quad(article, RDF_TYPE, IRI(CORE.Article), graph))
    return article


def feed_store() -> QuadStore:
    """The five-user tag-chain scenario used throughout the feed tests."""
    s = QuadStore()
    marko, dave, josh, apepe, gary = (add_person(s, n) for n in ("marko", "dave", "josh", "apepe", "gary"))
    provider = demo("provider")
    webpage1 = demo("webpage1")
    software1 = demo("software1")
    article1 = demo("article1")
    s.insert(Quad(webpage1, RDF_TYPE, IRI(CORE.Webpage), provider))
    s.insert(Quad(software1, RDF_TYPE, IRI(CORE.Item), provider))
    s.insert(Quad(article1, RDF_TYPE, IRI(CORE.Article), provider))
    tag(s, marko, SW, dave, 1.0, at=NOW - 3 * DAY)
    tag(s, marko, SW, josh, 1.0, at=NOW - 5 * DAY)
    tag(s, dave, JAVA, webpage1, 1.0, at=NOW - 2 * DAY)
    tag(s, josh, SW, apepe, 1.0, at=NOW - 4 * DAY)
    tag(s, apepe, SW, article1, 1.0, at=NOW - 1 * DAY)
    tag(s, gary, SW, software1, 1.0, at=NOW - 1 * DAY)
    return s


@pytest.fixture()
def feed() -> QuadStore:
    return feed_store()


def citation_store() -> QuadStore:
    """Article x by a; x cites y by b; b coauthored z with c; a coauthored w with d."""
    s = QuadStore()
    g = demo("g")
    a, b, c, d = (add_person(s, n, g) for n in "abcd")
    x, y, z, w = (add_article(s, f"art{n}", g) for n in "xyzw")
    created = IRI(CORE.created)
    cites = IRI(CORE.cites)
    s.insert(Quad(a, created, x, g))
    s.insert(Quad(x, cites, y, g))
    s.insert(Quad(b, created, y, g))
    s.insert(Quad(b, created, z, g))
    s.insert(Quad(c, created, z, g))
    s.insert(Quad(a, created, w, g))
    s.insert(Quad(d, created, w, g))
    return s


@pytest.fixture()
def citations() -> QuadStore:
    return citation_store()

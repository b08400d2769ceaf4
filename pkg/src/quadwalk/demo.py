"""Deterministic demo fixtures: a tagging feed scenario and a small corpus."""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

from .namespaces import CORE, RDF
from .store import QuadStore
from .tagging import record_usage, tag
from .terms import IRI, Quad, datetime_literal, string_literal

_RDF_TYPE = IRI(RDF.type)

FEED_NOW = datetime(2008, 7, 1, tzinfo=timezone.utc)
SEMANTIC_WEB = IRI("urn:scholar:concept:semantic-web")
JAVA = IRI("urn:scholar:concept:java")


def _person(store: QuadStore, name: str) -> IRI:
    person = IRI(f"urn:demo:{name}")
    store.insert(Quad(person, _RDF_TYPE, IRI(CORE.Person), person))
    store.insert(Quad(person, IRI(CORE.title), string_literal(name), person))
    return person


def build_feed_fixture(store: QuadStore) -> dict[str, IRI]:
    """Five users whose concept tags chain into a feed.

    marko tagged the users dave and josh with "semantic web"; josh respects
    apepe for the same concept, and apepe tagged article1 with it.  dave only
    tagged webpage1 with "java", and gary's software1 hangs off a user nobody
    respects — so a semantic-web feed for marko surfaces exactly apepe and
    article1.
    """
    provider = IRI("urn:demo:provider")
    people = {name: _person(store, name) for name in ("marko", "dave", "josh", "apepe", "gary")}
    webpage1 = IRI("urn:demo:webpage1")
    software1 = IRI("urn:demo:software1")
    article1 = IRI("urn:demo:article1")
    store.insert(Quad(webpage1, _RDF_TYPE, IRI(CORE.Webpage), provider))
    store.insert(Quad(software1, _RDF_TYPE, IRI(CORE.Item), provider))
    store.insert(Quad(article1, _RDF_TYPE, IRI(CORE.Article), provider))
    for item, label in ((webpage1, "webpage1"), (software1, "software1"), (article1, "article1")):
        store.insert(Quad(item, IRI(CORE.title), string_literal(label), provider))

    day = timedelta(days=1)
    tag(store, people["marko"], SEMANTIC_WEB, people["dave"], 1.0, at=FEED_NOW - 3 * day)
    tag(store, people["marko"], SEMANTIC_WEB, people["josh"], 1.0, at=FEED_NOW - 5 * day)
    tag(store, people["dave"], JAVA, webpage1, 1.0, at=FEED_NOW - 2 * day)
    tag(store, people["josh"], SEMANTIC_WEB, people["apepe"], 1.0, at=FEED_NOW - 4 * day)
    tag(store, people["apepe"], SEMANTIC_WEB, article1, 1.0, at=FEED_NOW - 1 * day)
    tag(store, people["gary"], SEMANTIC_WEB, software1, 1.0, at=FEED_NOW - 1 * day)

    return {
        **people,
        "webpage1": webpage1,
        "software1": software1,
        "article1": article1,
        "semantic-web": SEMANTIC_WEB,
        "java": JAVA,
        "provider": provider,
    }


def build_corpus_fixture(store: QuadStore) -> dict[str, IRI]:
    """A miniature scholarly corpus: authors, citations, a journal, usage.

    Gives every recommender and metric something to chew on: referee
    selection for ``paper-a``, discovery around ``alice``, an impact factor
    for ``journal`` at 2008, and co-usage between the two cited papers.
    """
    provider = IRI("urn:demo:library")
    agents = {}
    for name in ("alice", "bob", "carol", "dan", "erin"):
        agent = IRI(f"urn:demo:{name}")
        store.insert(Quad(agent, _RDF_TYPE, IRI(CORE.Person), provider))
        store.insert(Quad(agent, IRI(CORE.title), string_literal(name.capitalize()), provider))
        agents[name] = agent

    papers = {}
    blurbs = {
        "paper-a": ("Energy diffusion over typed graphs", 2008),
        "paper-b": ("Ranking scholars by shared artifacts", 2007),
        "paper-c": ("Half-life weighting for feeds", 2007),
        "paper-d": ("Indexing quads four ways", 2006),
    }
    for key, (title, year) in blurbs.items():
        paper = IRI(f"urn:demo:{key}")
        store.insert(Quad(paper, _RDF_TYPE, IRI(CORE.Article), provider))
        store.insert(Quad(paper, IRI(CORE.title), string_literal(title), provider))
        stamp = datetime(year, 3, 1, tzinfo=timezone.utc)
        store.insert(Quad(paper, IRI(CORE.creationTime), datetime_literal(stamp), provider))
        papers[key] = paper

    def created(author: str, paper: str):
        store.insert(Quad(agents[author], IRI(CORE.created), papers[paper], provider))

    created("alice", "paper-a")
    created("bob", "paper-b")
    created("carol", "paper-b")
    created("carol", "paper-c")
    created("dan", "paper-c")
    created("alice", "paper-d")
    created("erin", "paper-d")

    def cites(src: str, dst: str):
        store.insert(Quad(papers[src], IRI(CORE.cites), papers[dst], provider))

    cites("paper-a", "paper-b")
    cites("paper-a", "paper-c")
    cites("paper-b", "paper-d")
    cites("paper-c", "paper-d")

    journal = IRI("urn:demo:journal")
    store.insert(Quad(journal, _RDF_TYPE, IRI(CORE.Collection), provider))
    store.insert(Quad(journal, IRI(CORE.title), string_literal("Journal of Graph Walks"), provider))
    for key in ("paper-b", "paper-c", "paper-d"):
        store.insert(Quad(journal, IRI(CORE.contains), papers[key], provider))

    meetup = IRI("urn:demo:workshop")
    store.insert(Quad(meetup, _RDF_TYPE, IRI(CORE.Event), provider))
    store.insert(Quad(meetup, IRI(CORE.title), string_literal("Graph Workshop"), provider))
    for name in ("alice", "bob", "dan"):
        store.insert(Quad(agents[name], IRI(CORE.attends), meetup, provider))
    store.insert(Quad(meetup, IRI(CORE.presents), papers["paper-b"], provider))
    store.insert(Quad(meetup, IRI(CORE.presents), papers["paper-c"], provider))

    base = datetime(2008, 6, 1, tzinfo=timezone.utc)
    record_usage(store, agents["erin"], papers["paper-b"], papers["paper-c"], base)
    record_usage(store, agents["erin"], papers["paper-c"], papers["paper-b"], base + timedelta(minutes=5))
    record_usage(store, agents["dan"], papers["paper-b"], papers["paper-c"], base + timedelta(hours=1))

    tag(store, agents["alice"], SEMANTIC_WEB, papers["paper-b"], 0.9, at=base)
    tag(store, agents["bob"], SEMANTIC_WEB, papers["paper-c"], 0.8, at=base + timedelta(days=1))

    return {**agents, **papers, "journal": journal, "workshop": meetup, "provider": provider}


def build_all(store: QuadStore) -> dict[str, IRI]:
    names = build_feed_fixture(store)
    names.update(build_corpus_fixture(store))
    return names

"""HTTP JSON API: viewing, search, tagging, usage capture, recommenders.

Authentication is a stub: a session names a user IRI, and every write lands
in that user's graph.  All responses carry a schema version field ("v": 1)
and deterministic ordering so identical store states yield identical bytes.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from urllib.parse import unquote

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import analytics
from .namespaces import CORE, compact_iri
from .recommenders import (
    NewsRequest,
    RefereeRequest,
    UnknownGrammarError,
    discover,
    load_named_grammar,
    news,
    referees,
)
from .store import QuadStore
from .tagging import record_usage, tag, tags_by_owner, tags_on_resource
from .terms import IRI, BlankNode, Literal, Term, TermError, parse_datetime
from .vocab import (
    UnknownClassError,
    Vocabulary,
    asserted_types,
    load_vocabulary,
    most_specific_class,
)
from .walker import WalkerConfig, WalkerEngine, WalkError

FANOUT_CAP = 100  # neighbors listed per predicate in a resource view
V = 1


@dataclass(slots=True)
class Session:
    session_id: str
    user: IRI
    last_viewed: IRI | None = None


@dataclass(slots=True)
class _State:
    store: QuadStore
    vocab: Vocabulary
    sessions: dict[str, Session] = field(default_factory=dict)
    counter: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    def new_session(self, user: IRI) -> Session:
        with self.lock:
            self.counter += 1
            session = Session(session_id=f"s-{self.counter}", user=user)
            self.sessions[session.session_id] = session
            return session

    def session(self, session_id: str | None) -> Session:
        if not session_id or session_id not in self.sessions:
            raise HTTPException(status_code=400, detail="missing or unknown session")
        return self.sessions[session_id]


class SessionBody(BaseModel):
    user: str


class TagBody(BaseModel):
    concept: str
    resource: str
    weight: float = 1.0


class DiscoverBody(BaseModel):
    seeds: list[str]
    returnTypes: list[str] = Field(default_factory=list)
    cfg: dict = Field(default_factory=dict)


class ReasonerBody(BaseModel):
    name: str
    params: dict = Field(default_factory=dict)


def _iri(text: str, what: str = "IRI") -> IRI:
    try:
        return IRI(unquote(text))
    except TermError as exc:
        raise HTTPException(status_code=400, detail=f"invalid {what}: {exc}") from exc


def _term_json(term: Term):
    if isinstance(term, IRI):
        return {"kind": "iri", "value": term.value}
    if isinstance(term, BlankNode):
        return {"kind": "blank", "value": term.label}
    assert isinstance(term, Literal)
    body = {"kind": "literal", "value": term.lexical}
    if term.lang:
        body["lang"] = term.lang
    elif term.datatype:
        body["datatype"] = term.datatype
    return body


def _ranked_json(entries) -> dict:
    return {
        "v": V,
        "entries": [
            {"resource": _term_json(term), "score": score} for term, score in entries
        ],
    }


def _walker_cfg(raw: dict, **forced) -> WalkerConfig:
    allowed = {
        "mode",
        "walkersPerSeed",
        "initialEnergy",
        "decay",
        "energyThreshold",
        "maxSteps",
        "rngSeed",
    }
    unknown = set(raw) - allowed
    if unknown:
        raise HTTPException(status_code=400, detail=f"unknown cfg fields: {sorted(unknown)}")
    mapping = {
        "mode": "mode",
        "walkersPerSeed": "walkers_per_seed",
        "initialEnergy": "initial_energy",
        "decay": "decay",
        "energyThreshold": "energy_threshold",
        "maxSteps": "max_steps",
        "rngSeed": "rng_seed",
    }
    kwargs = {mapping[k]: v for k, v in raw.items()}
    kwargs.update(forced)
    try:
        return WalkerConfig(**kwargs)
    except (WalkError, TypeError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def _parse_now(now: str | None) -> datetime:
    if now is None:
        return datetime.now(timezone.utc)
    try:
        return parse_datetime(now)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=f"invalid timestamp: {now}") from exc


def create_app(store: QuadStore | None = None) -> FastAPI:
    state = _State(store=store if store is not None else QuadStore(), vocab=load_vocabulary())
    app = FastAPI(title="quadwalk", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.quadwalk = state

    @app.get("/health")
    def health():
        return {"v": V, "status": "ok", "quads": len(state.store)}

    @app.post("/session")
    def open_session(body: SessionBody):
        session = state.new_session(_iri(body.user, "user IRI"))
        return {"v": V, "sessionId": session.session_id, "user": session.user.value}

    @app.get("/resource/{rid:path}")
    def view_resource(rid: str, session: str | None = None, now: str | None = None):
        target = _iri(rid, "resource IRI")
        if not state.store.has_node(target) and target not in state.store.graphs():
            raise HTTPException(status_code=404, detail=f"unknown resource: {target.value}")
        if session is not None:
            sess = state.session(session)
            stamp = _parse_now(now)
            if sess.last_viewed is not None and sess.last_viewed != target:
                record_usage(state.store, sess.user, sess.last_viewed, target, stamp)
            sess.last_viewed = target
        return _resource_view(state, target)

    @app.get("/search")
    def search(q: str = Query(default="")):
        if not q.strip():
            raise HTTPException(status_code=400, detail="empty query")
        return _ranked_json(_search(state.store, q))

    @app.post("/discover")
    def discover_endpoint(body: DiscoverBody):
        seeds = [_iri(s, "seed IRI") for s in body.seeds]
        cfg = _walker_cfg(body.cfg)
        try:
            ranked = discover(state.store, seeds, [_iri(t).value for t in body.returnTypes], cfg)
        except UnknownClassError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except WalkError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return _ranked_json(ranked)

    @app.post("/reasoner")
    def reasoner(body: ReasonerBody):
        return _reasoner(state, body.name, dict(body.params))

    @app.post("/tag")
    def tag_endpoint(body: TagBody, session: str | None = None):
        sess = state.session(session)
        concept = _iri(body.concept, "concept IRI")
        resource = _iri(body.resource, "resource IRI")
        if not state.store.has_node(resource) and resource not in state.store.graphs():
            raise HTTPException(status_code=404, detail=f"unknown resource: {resource.value}")
        try:
            node = tag(state.store, sess.user, concept, resource, body.weight)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {"v": V, "association": node.label, "graph": sess.user.value}

    @app.get("/organize")
    def organize(session: str | None = None):
        sess = state.session(session)
        folders: dict[str, list[dict]] = {}
        for edge in tags_by_owner(state.store, sess.user):
            key = edge.concept.value if isinstance(edge.concept, IRI) else edge.concept.nq()
            folders.setdefault(key, []).append(
                {
                    "resource": _term_json(edge.resource),
                    "weight": edge.weight,
                    "insertTime": edge.insert_time.isoformat().replace("+00:00", "Z"),
                }
            )
        for items in folders.values():
            items.sort(key=lambda row: (row["resource"]["value"], row["insertTime"]))
        return {"v": V, "user": sess.user.value, "folders": dict(sorted(folders.items()))}

    @app.get("/news")
    def news_endpoint(
        concept: str,
        session: str | None = None,
        now: str | None = None,
        halfLifeSeconds: float = 7 * 86400.0,
    ):
        sess = state.session(session)
        req = NewsRequest(
            user=sess.user,
            concept=_iri(concept, "concept IRI"),
            now=_parse_now(now),
            half_life=halfLifeSeconds,
        )
        return _ranked_json(news(state.store, req))

    @app.get("/stats/{metric}")
    def stats(metric: str, resource: str, other: str | None = None, year: int | None = None):
        target = _iri(resource, "resource IRI")
        try:
            rep = analytics.report(
                state.store,
                metric,
                target,
                other=_iri(other) if other else None,
                year=year,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        body = {
            "v": V,
            "resource": target.value,
            "metric": rep.metric,
            "value": rep.value,
        }
        if rep.window is not None:
            body["window"] = {"start": rep.window[0], "end": rep.window[1]}
        return body

    return app


def _resource_view(state: _State, target: Term) -> dict:
    store, vocab = state.store, state.vocab
    types = sorted(asserted_types(store, target))
    specific = most_specific_class(store, vocab, target)
    outgoing: dict[str, list] = {}
    incoming: dict[str, list] = {}
    title = ""
    abstract = ""
    for pred in store.predicates():
        out_terms = store.neighbors(target, pred, "out")
        if pred.value == CORE.title and out_terms:
            first = out_terms[0]
            title = first.lexical if isinstance(first, Literal) else ""
        if pred.value == CORE.abstract and out_terms:
            first = out_terms[0]
            abstract = first.lexical if isinstance(first, Literal) else ""
        if out_terms:
            outgoing[compact_iri(pred.value)] = [_term_json(t) for t in out_terms[:FANOUT_CAP]]
        in_terms = store.neighbors(target, pred, "in")
        if in_terms:
            incoming[compact_iri(pred.value)] = [_term_json(t) for t in in_terms[:FANOUT_CAP]]
    tags = [
        {
            "concept": _term_json(edge.concept),
            "weight": edge.weight,
            "tagger": _term_json(edge.owner),
        }
        for edge in tags_on_resource(store, target)
    ]
    tags.sort(key=lambda row: (row["concept"]["value"], row["tagger"]["value"]))
    return {
        "v": V,
        "id": target.value if isinstance(target, IRI) else target.nq(),
        "types": [compact_iri(t) for t in types],
        "abbrev": vocab.abbreviation(specific) if specific else "",
        "title": title,
        "abstract": abstract,
        "outgoing": dict(sorted(outgoing.items())),
        "incoming": dict(sorted(incoming.items())),
        "tags": tags,
    }


def _search(store: QuadStore, query: str) -> list[tuple[Term, float]]:
    tokens = [t for t in query.lower().split() if t]
    texts: dict[Term, list[str]] = {}
    for pred in (IRI(CORE.title), IRI(CORE.abstract)):
        for quad in store.match(p=pred):
            if isinstance(quad.o, Literal):
                texts.setdefault(quad.s, []).append(quad.o.lexical.lower())
    scored: list[tuple[Term, float]] = []
    for subject, chunks in texts.items():
        blob = " ".join(chunks)
        hits = sum(1 for token in tokens if token in blob)
        if hits:
            scored.append((subject, float(hits)))
    scored.sort(key=lambda pair: (-pair[1], pair[0].sort_key()))
    return scored


def _reasoner(state: _State, name: str, params: dict) -> dict:
    store = state.store
    if name == "referee":
        article_text = params.pop("article", None)
        if not article_text:
            raise HTTPException(status_code=400, detail="referee needs an article")
        article = _iri(article_text, "article IRI")
        if not store.has_node(article):
            raise HTTPException(status_code=404, detail=f"unknown resource: {article.value}")
        cfg = _walker_cfg(params.pop("cfg", {}), energy_threshold=1e-12)
        try:
            req = RefereeRequest(
                article=article,
                max_depth_coauthor=int(params.pop("maxDepthCoauthor", 2)),
                decay=float(params.pop("decay", 0.5)),
            )
            _reject_unknown(params)
            return _ranked_json(referees(store, req, cfg))
        except (ValueError, WalkError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
    # Generic named grammar: run it straight over the supplied seeds.
    try:
        grammar = load_named_grammar(name)
    except UnknownGrammarError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    seeds_text = params.pop("seeds", [])
    if not seeds_text:
        raise HTTPException(status_code=400, detail=f"grammar {name!r} needs seeds")
    seeds = [_iri(s, "seed IRI") for s in seeds_text]
    cfg = _walker_cfg(params.pop("cfg", {}))
    _reject_unknown(params)
    try:
        ranked = WalkerEngine(store, state.vocab).execute(grammar, seeds, cfg)
    except WalkError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return _ranked_json(ranked.positive())


def _reject_unknown(params: dict):
    if params:
        raise HTTPException(status_code=400, detail=f"unknown params: {sorted(params)}")

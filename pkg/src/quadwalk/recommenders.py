"""Concrete recommenders built on the walker: discover, referees, news.

Each recommender assembles a grammar (from the shipped config files or
programmatically, when request parameters change the shape), runs the walker,
and applies its own result filtering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from datetime import datetime
from importlib import resources

from .namespaces import CORE, RELATION, expand_curie
from .store import QuadStore
from .tagging import tags_by_owner
from .terms import IRI, Term
from .vocab import UnknownClassError, is_instance, load_vocabulary
from .walker import (
    Emit,
    Grammar,
    GrammarError,
    GrammarStep,
    Loop,
    RankedList,
    TimeDecay,
    WalkerConfig,
    WalkerEngine,
)

DEFAULT_HALF_LIFE_SECONDS = 7 * 86400.0
COMPOSITE_BOOST = 2.0  # accent on composite paths relative to generic edges


class UnknownGrammarError(ValueError):
    def __init__(self, name: str, available: list[str]):
        super().__init__(f"no grammar named {name!r}; available: {', '.join(available)}")


@dataclass(frozen=True, slots=True)
class RefereeRequest:
    """Find reviewers for an article, skipping conflicted candidates."""

    article: IRI
    max_depth_coauthor: int = 2
    decay: float = 0.5

    def __post_init__(self):
        if self.max_depth_coauthor < 0:
            raise ValueError("coauthor depth cannot be negative")
        if not 0.0 <= self.decay <= 1.0:
            raise ValueError(f"decay must be in [0, 1], got {self.decay}")


@dataclass(frozen=True, slots=True)
class NewsRequest:
    """Recency-weighted feed of resources tagged with one concept."""

    user: IRI
    concept: IRI
    now: datetime
    half_life: float = DEFAULT_HALF_LIFE_SECONDS  # seconds

    def __post_init__(self):
        if self.half_life <= 0:
            raise ValueError("half-life must be positive")


# -- grammar files ---------------------------------------------------------


def grammar_names() -> list[str]:
    files = resources.files("quadwalk").joinpath("grammars")
    return sorted(p.name[: -len(".json")] for p in files.iterdir() if p.name.endswith(".json"))


def load_named_grammar(name: str) -> Grammar:
    """Load a shipped grammar config by bare name (no extension)."""
    files = resources.files("quadwalk").joinpath("grammars")
    candidate = files.joinpath(f"{name}.json")
    if not candidate.is_file():
        raise UnknownGrammarError(name, grammar_names())
    try:
        raw = json.loads(candidate.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GrammarError(f"grammar {name!r} is not valid JSON: {exc}") from exc
    return parse_grammar(raw, name=name)


def parse_grammar(raw: dict, name: str = "<inline>") -> Grammar:
    """Build a Grammar from its JSON shape, expanding prefixed names."""
    if not isinstance(raw, dict) or not isinstance(raw.get("steps"), list):
        raise GrammarError(f"grammar {name!r} must be an object with a steps list")
    steps = tuple(_parse_step(s, name, i) for i, s in enumerate(raw["steps"]))
    loop = None
    if raw.get("loop") is not None:
        loop_raw = raw["loop"]
        loop = Loop(
            back_to_step=int(loop_raw["backToStep"]),
            decay_per_loop=float(loop_raw.get("decayPerLoop", 1.0)),
        )
    return Grammar(steps=steps, loop=loop, description=str(raw.get("description", "")))


def _parse_step(raw: dict, name: str, index: int) -> GrammarStep:
    if not isinstance(raw, dict) or "predicate" not in raw:
        raise GrammarError(f"grammar {name!r} step {index} needs a predicate")
    emit = None
    if raw.get("emit") is not None:
        emit_raw = raw["emit"]
        sign_text = str(emit_raw.get("sign", "+"))
        if sign_text not in ("+", "-"):
            raise GrammarError(f"grammar {name!r} step {index}: emit sign must be '+' or '-'")
        restriction = emit_raw.get("typeRestriction")
        emit = Emit(
            sign=1 if sign_text == "+" else -1,
            type_restriction=expand_curie(restriction) if restriction else None,
        )
    time_decay = None
    if raw.get("timeDecay") is not None:
        td = raw["timeDecay"]
        time_decay = TimeDecay(
            half_life=float(td["halfLifeSeconds"]),
            timestamp_source=str(td.get("timestampSource", "related-insertTime")),
        )
    require_type = raw.get("requireType")
    require_tag_concept = raw.get("requireTagConcept")
    predicate = raw["predicate"]
    return GrammarStep(
        predicate=predicate if predicate == "*" else expand_curie(predicate),
        direction=str(raw.get("direction", "out")),
        filters=tuple(raw.get("filters", ())),
        require_type=expand_curie(require_type) if require_type else None,
        require_tag_concept=expand_curie(require_tag_concept) if require_tag_concept else None,
        emit=emit,
        time_decay=time_decay,
        decay=float(raw["decay"]) if raw.get("decay") is not None else None,
    )


# -- referees ---------------------------------------------------------------


def _coauthor_hop(decay: float, sign: int) -> tuple[GrammarStep, GrammarStep]:
    return (
        GrammarStep(predicate=CORE.created, direction="out", decay=decay),
        GrammarStep(
            predicate=CORE.createdBy,
            direction="out",
            filters=("exclude-previous-node",),
            decay=1.0,
            emit=Emit(sign=sign, type_restriction=CORE.Agent),
        ),
    )


def referee_grammars(req: RefereeRequest) -> tuple[Grammar, Grammar, int, int]:
    """Positive-candidate and conflict grammars plus their step budgets."""
    positive_steps: list[GrammarStep] = [
        GrammarStep(predicate=CORE.cites, direction="out", decay=1.0),
        GrammarStep(
            predicate=CORE.createdBy,
            direction="out",
            decay=1.0,
            emit=Emit(sign=1, type_restriction=CORE.Agent),
        ),
    ]
    negative_steps: list[GrammarStep] = [
        GrammarStep(
            predicate=CORE.createdBy,
            direction="out",
            decay=1.0,
            emit=Emit(sign=-1, type_restriction=CORE.Agent),
        ),
    ]
    positive_loop = negative_loop = None
    if req.max_depth_coauthor > 0:
        positive_steps.extend(_coauthor_hop(req.decay, sign=1))
        negative_steps.extend(_coauthor_hop(req.decay, sign=-1))
        positive_loop = Loop(back_to_step=2, decay_per_loop=1.0)
        negative_loop = Loop(back_to_step=1, decay_per_loop=1.0)
    positive = Grammar(
        steps=tuple(positive_steps), loop=positive_loop, description="referee candidates"
    )
    negative = Grammar(
        steps=tuple(negative_steps), loop=negative_loop, description="referee conflicts"
    )
    return positive, negative, 2 + 2 * req.max_depth_coauthor, 1 + 2 * req.max_depth_coauthor


def referees(store: QuadStore, req: RefereeRequest, cfg: WalkerConfig | None = None) -> RankedList:
    """Rank candidate reviewers for an article.

    Two walks: one scores authors of cited work and their coauthors with
    per-hop decay; the other sweeps out the article's own authors and their
    coauthors.  Anyone the conflict sweep reaches is dropped outright — a
    conflicted candidate must never appear, however well the positive walk
    scored them.  An article citing nothing yields an empty list.
    """
    vocab = load_vocabulary()
    if not is_instance(store, vocab, req.article, CORE.Article):
        raise ValueError(f"referee target must be a known article: {req.article.value}")
    base = cfg or WalkerConfig(energy_threshold=1e-12)
    positive, negative, pos_budget, neg_budget = referee_grammars(req)
    engine = WalkerEngine(store, vocab)
    pos = engine.execute(positive, [req.article], replace(base, max_steps=pos_budget))
    neg = engine.execute(negative, [req.article], replace(base, max_steps=neg_budget))
    conflicted = {term for term, score in neg if score != 0.0}
    kept = {
        term: score for term, score in pos if score > 0.0 and term not in conflicted
    }
    return RankedList.from_scores(kept)


# -- news -------------------------------------------------------------------


def news_grammar(concept: IRI, half_life: float) -> Grammar:
    step = GrammarStep(
        predicate=RELATION.related,
        direction="out",
        require_tag_concept=concept.value,
        time_decay=TimeDecay(half_life=half_life),
        emit=Emit(sign=1),
    )
    return Grammar(
        steps=(step,),
        loop=Loop(back_to_step=0, decay_per_loop=1.0),
        description="recency-weighted concept feed",
    )


def news(store: QuadStore, req: NewsRequest, cfg: WalkerConfig | None = None) -> RankedList:
    """Feed of resources reachable over one concept's tag trail.

    Seeds are everything the user tagged with the concept; the walk hops
    tagger-to-tagged along same-concept associations, each hop worth
    2^(-age/half_life).  The user, the seeds, and anything the user already
    tagged with the concept never appear in the result.
    """
    seeds = sorted(
        {edge.resource for edge in tags_by_owner(store, req.user, req.concept)},
        key=lambda t: t.sort_key(),
    )
    if not seeds:
        return RankedList()
    base = cfg or WalkerConfig()
    run_cfg = replace(base, now=req.now)
    ranked = WalkerEngine(store).execute(news_grammar(req.concept, req.half_life), seeds, run_cfg)
    owned = set(seeds) | {req.user}
    kept = {term: score for term, score in ranked if score > 0.0 and term not in owned}
    return RankedList.from_scores(kept)


# -- discover ----------------------------------------------------------------


def _composite_grammars() -> list[Grammar]:
    shared_item = Grammar(
        steps=(
            GrammarStep(predicate=CORE.created, direction="out"),
            GrammarStep(
                predicate=CORE.createdBy,
                direction="out",
                filters=("exclude-previous-node",),
                emit=Emit(sign=1, type_restriction=CORE.Agent),
            ),
        ),
        description="coauthorship",
    )
    co_citation = Grammar(
        steps=(
            GrammarStep(predicate=CORE.cites, direction="in"),
            GrammarStep(
                predicate=CORE.cites,
                direction="out",
                filters=("exclude-previous-node",),
                emit=Emit(sign=1, type_restriction=CORE.Item),
            ),
        ),
        description="co-citation",
    )
    co_presented = Grammar(
        steps=(
            GrammarStep(predicate=CORE.presents, direction="in"),
            GrammarStep(
                predicate=CORE.presents,
                direction="out",
                filters=("exclude-previous-node",),
                emit=Emit(sign=1, type_restriction=CORE.Item),
            ),
        ),
        description="co-event (items presented together)",
    )
    co_attended = Grammar(
        steps=(
            GrammarStep(predicate=CORE.attends, direction="out"),
            GrammarStep(
                predicate=CORE.attends,
                direction="in",
                filters=("exclude-previous-node",),
                emit=Emit(sign=1, type_restriction=CORE.Agent),
            ),
        ),
        description="co-event (agents attending together)",
    )
    co_usage = Grammar(
        steps=(
            GrammarStep(predicate=RELATION.usage, direction="both", emit=Emit(sign=1)),
        ),
        description="co-usage",
    )
    return [shared_item, co_citation, co_presented, co_attended, co_usage]


def discover(
    store: QuadStore,
    seeds: list[Term],
    return_types: list[str],
    cfg: WalkerConfig | None = None,
) -> RankedList:
    """Explore the seed neighborhood over every generic edge.

    Composite paths (coauthorship, co-citation, co-event, co-usage) run as
    extra walks whose scores are boosted, so structurally meaningful
    two-hop relations outrank incidental adjacency.  Results are filtered
    to the requested classes (subclasses included) and never include seeds.
    """
    vocab = load_vocabulary()
    for cls in return_types:
        if cls != vocab.root and cls not in vocab.subclass_of:
            raise UnknownClassError(cls)
    base = cfg or WalkerConfig()
    engine = WalkerEngine(store, vocab)
    totals: dict[Term, float] = {}

    def accumulate(ranked: RankedList, weight: float):
        for term, score in ranked:
            totals[term] = totals.get(term, 0.0) + weight * score

    accumulate(engine.execute(load_named_grammar("discover"), seeds, base), 1.0)
    for grammar in _composite_grammars():
        accumulate(engine.execute(grammar, seeds, base), COMPOSITE_BOOST)

    seed_set = set(seeds)
    kept: dict[Term, float] = {}
    for term, score in totals.items():
        if score <= 0.0 or term in seed_set:
            continue
        if return_types and not any(
            is_instance(store, vocab, term, cls) for cls in return_types
        ):
            continue
        kept[term] = score
    return RankedList.from_scores(kept)

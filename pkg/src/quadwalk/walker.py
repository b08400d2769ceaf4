"""Grammar-constrained walks with decaying energy.

A grammar is an ordered list of typed steps, optionally looping back to an
earlier step.  Walkers start at seed nodes carrying energy and traverse one
qualifying edge per step; steps marked ``emit`` deposit the walker's energy
(positive or negative) on the node they arrive at.  Two execution modes share
the same edge semantics:

* diffusion — deterministic expectation: a parcel splits its energy equally
  over all qualifying edges each step;
* montecarlo — independent walkers choose one qualifying edge uniformly at
  random (seeded RNG); scores are averaged over walkers per seed.

Energy decays multiplicatively on every traversed edge.  Per-edge precedence:
a step's half-life time decay, else the step's own decay factor, else the
run-config decay.  Looping back additionally multiplies the loop's
decay-per-loop factor once per wrap.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from datetime import datetime

from scipy import sparse

from .namespaces import CORE, OWL, RDF, RDFS, RELATION, XSD, is_schema_iri
from .store import QuadStore
from .tagging import tags_by_owner, tags_on_resource, usage_neighbors
from .terms import IRI, Literal, Term
from .vocab import Vocabulary, is_instance, load_vocabulary

WILDCARD = "*"
CREATED_BY = CORE.createdBy  # derived: transpose of core:created

# Attribute edges of reified association nodes; never walked generically.
_PLUMBING = frozenset(
    {CORE.subject, CORE.object, CORE.weight, CORE.insertTime, CORE.usageStamps}
)

_DIRECTIONS = ("out", "in", "both")
_FILTERS = ("exclude-previous-node", "exclude-seeds", "not-self")


class WalkError(ValueError):
    """Invalid walk request."""


class EmptySeedsError(WalkError):
    def __init__(self):
        super().__init__("walk requires at least one seed")


class UnknownSeedError(WalkError):
    def __init__(self, seed: Term):
        super().__init__(f"seed not present in store: {seed.nq()}")


class UnknownPredicateError(WalkError):
    def __init__(self, predicate: str):
        super().__init__(f"grammar references unknown predicate: {predicate}")


class GrammarError(ValueError):
    """Structurally invalid grammar."""


@dataclass(frozen=True, slots=True)
class TimeDecay:
    """Half-life decay 2^(-delta/half_life) keyed on association timestamps."""

    half_life: float  # seconds
    timestamp_source: str = "related-insertTime"

    def __post_init__(self):
        if self.half_life <= 0:
            raise GrammarError(f"half-life must be positive, got {self.half_life}")
        if self.timestamp_source != "related-insertTime":
            raise GrammarError(f"unknown timestamp source: {self.timestamp_source}")

    def factor(self, now: datetime, stamped: datetime) -> float:
        delta = max(0.0, (now - stamped).total_seconds())
        return 2.0 ** (-delta / self.half_life)


@dataclass(frozen=True, slots=True)
class Emit:
    """Deposit the arriving parcel's signed energy on qualifying targets."""

    sign: int = 1
    type_restriction: str | None = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise GrammarError(f"emit sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True, slots=True)
class GrammarStep:
    predicate: str  # IRI, or "*" for every generic object edge
    direction: str = "out"
    filters: tuple[str, ...] = ()
    require_type: str | None = None
    require_tag_concept: str | None = None
    emit: Emit | None = None
    time_decay: TimeDecay | None = None
    decay: float | None = None  # per-step override of cfg.decay

    def __post_init__(self):
        if self.direction not in _DIRECTIONS:
            raise GrammarError(f"direction must be one of {_DIRECTIONS}, got {self.direction!r}")
        for name in self.filters:
            if name not in _FILTERS:
                raise GrammarError(f"unknown filter {name!r}; expected one of {_FILTERS}")
        if self.decay is not None and not 0.0 <= self.decay <= 1.0:
            raise GrammarError(f"step decay must be in [0, 1], got {self.decay}")
        if self.time_decay is not None and self.predicate != RELATION.related:
            raise GrammarError("time decay requires the tagging predicate (association timestamps)")
        if self.require_tag_concept is not None and self.predicate != RELATION.related:
            raise GrammarError("tag-concept filter requires the tagging predicate")


@dataclass(frozen=True, slots=True)
class Loop:
    back_to_step: int
    decay_per_loop: float = 1.0

    def __post_init__(self):
        if self.back_to_step < 0:
            raise GrammarError("loop target must be a step index")
        if not 0.0 <= self.decay_per_loop <= 1.0:
            raise GrammarError(f"loop decay must be in [0, 1], got {self.decay_per_loop}")


@dataclass(frozen=True, slots=True)
class Grammar:
    steps: tuple[GrammarStep, ...]
    loop: Loop | None = None
    description: str = ""

    def __post_init__(self):
        if not self.steps:
            raise GrammarError("grammar needs at least one step")
        if self.loop is not None and self.loop.back_to_step >= len(self.steps):
            raise GrammarError(
                f"loop target {self.loop.back_to_step} out of range for {len(self.steps)} steps"
            )


@dataclass(frozen=True, slots=True)
class WalkerConfig:
    mode: str = "diffusion"  # or "montecarlo"
    walkers_per_seed: int = 1000
    initial_energy: float = 1.0
    decay: float = 0.85
    energy_threshold: float = 1e-4
    max_steps: int = 12
    rng_seed: int = 7
    now: datetime | None = None  # clock for time-decay steps

    def __post_init__(self):
        if self.mode not in ("diffusion", "montecarlo"):
            raise WalkError(f"mode must be diffusion or montecarlo, got {self.mode!r}")
        if self.walkers_per_seed <= 0:
            raise WalkError("walkers_per_seed must be positive")
        if self.initial_energy <= 0:
            raise WalkError("initial energy must be positive")
        if not 0.0 <= self.decay <= 1.0:
            raise WalkError(f"decay must be in [0, 1], got {self.decay}")
        if self.energy_threshold <= 0:
            raise WalkError("energy threshold must be positive")
        if self.energy_threshold >= self.initial_energy:
            raise WalkError("energy threshold must be below the initial energy")
        if self.max_steps <= 0:
            raise WalkError("max steps must be positive")


@dataclass(frozen=True)
class RankedList:
    """Scored resources, best first; ties break on lexicographic identity."""

    entries: tuple[tuple[Term, float], ...] = ()

    @classmethod
    def from_scores(cls, scores: dict[Term, float]) -> "RankedList":
        ordered = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0].nq()))
        return cls(tuple(ordered))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def resources(self) -> list[Term]:
        return [term for term, _ in self.entries]

    def score_of(self, term: Term) -> float | None:
        for candidate, score in self.entries:
            if candidate == term:
                return score
        return None

    def as_dict(self) -> dict[Term, float]:
        return {term: score for term, score in self.entries}

    def positive(self) -> "RankedList":
        return RankedList(tuple((t, s) for t, s in self.entries if s > 0.0))

    def top(self, n: int) -> "RankedList":
        return RankedList(self.entries[:n])


@dataclass(frozen=True, slots=True)
class _Edge:
    target: Term
    stamped: datetime | None = None  # association insert time, when applicable


def _validate(store: QuadStore, grammar: Grammar, seeds: list[Term], cfg: WalkerConfig):
    if not seeds:
        raise EmptySeedsError()
    for seed in seeds:
        if not store.has_node(seed) and seed not in store.graphs():
            raise UnknownSeedError(seed)
    if cfg.max_steps < len(grammar.steps):
        raise WalkError(
            f"step budget {cfg.max_steps} cannot cover a {len(grammar.steps)}-step grammar"
        )
    vocab = load_vocabulary()
    for step in grammar.steps:
        if step.time_decay is not None and cfg.now is None:
            raise WalkError("grammar uses time decay but the config has no clock (now)")
        pred = step.predicate
        if pred == WILDCARD:
            continue
        if pred in (RELATION.related, RELATION.usage, CREATED_BY):
            continue
        if pred in vocab.properties:
            continue
        if store.has_predicate(IRI(pred)):
            continue
        raise UnknownPredicateError(pred)


class WalkerEngine:
    """Executes grammars over one store snapshot."""

    def __init__(self, store: QuadStore, vocab: Vocabulary | None = None):
        self.store = store
        self.vocab = vocab or load_vocabulary()
        self._type_cache: dict[tuple[Term, str], bool] = {}

    # -- edge resolution -------------------------------------------------

    def _is_instance(self, node: Term, cls: str) -> bool:
        key = (node, cls)
        hit = self._type_cache.get(key)
        if hit is None:
            hit = is_instance(self.store, self.vocab, node, cls)
            self._type_cache[key] = hit
        return hit

    def _base_edges(self, node: Term, predicate: str, direction: str) -> list[_Edge]:
        out: list[_Edge] = []
        if direction in ("out", "both"):
            for target in self.store.neighbors(node, IRI(predicate), "out"):
                if not isinstance(target, Literal):
                    out.append(_Edge(target))
        if direction in ("in", "both"):
            for target in self.store.neighbors(node, IRI(predicate), "in"):
                out.append(_Edge(target))
        return out

    def _tag_edges(self, node: Term, direction: str, concept: str | None) -> list[_Edge]:
        """Virtual tagger->tagged edges carried by relation:related nodes."""
        want = IRI(concept) if concept else None
        out: list[_Edge] = []
        if direction in ("out", "both"):
            for edge in tags_by_owner(self.store, node, want):
                out.append(_Edge(edge.resource, edge.insert_time))
        if direction in ("in", "both"):
            for edge in tags_on_resource(self.store, node):
                if want is None or edge.concept == want:
                    out.append(_Edge(edge.owner, edge.insert_time))
        return out

    def _usage_edges(self, node: Term, direction: str) -> list[_Edge]:
        out: list[_Edge] = []
        if direction in ("out", "both"):
            for target, _count in usage_neighbors(self.store, node, "out"):
                out.append(_Edge(target))
        if direction in ("in", "both"):
            for target, _count in usage_neighbors(self.store, node, "in"):
                out.append(_Edge(target))
        return out

    def _wildcard_edges(self, node: Term, direction: str) -> list[_Edge]:
        """Every generic object edge: skips typing, schema, and association plumbing."""
        out: list[_Edge] = []
        for pred_term in self.store.predicates():
            pred = pred_term.value
            if pred == RDF.type or pred in _PLUMBING:
                continue
            if pred in RDF or pred in RDFS or pred in OWL or pred in XSD:
                continue  # schema-definition predicates (subClassOf and kin)
            prop = self.vocab.properties.get(pred)
            if prop is not None and prop.range.startswith(str(XSD)):
                continue  # datatype property: targets are values, not nodes
            for edge in self._base_edges(node, pred, direction):
                if isinstance(edge.target, IRI) and is_schema_iri(edge.target.value):
                    continue
                out.append(edge)
        return out

    def _edges(self, node: Term, step: GrammarStep) -> list[_Edge]:
        pred = step.predicate
        if pred == WILDCARD:
            edges = self._wildcard_edges(node, step.direction)
        elif pred == RELATION.related:
            edges = self._tag_edges(node, step.direction, step.require_tag_concept)
        elif pred == RELATION.usage:
            edges = self._usage_edges(node, step.direction)
        elif pred == CREATED_BY:
            flipped = {"out": "in", "in": "out", "both": "both"}[step.direction]
            edges = self._base_edges(node, CORE.created, flipped)
        else:
            edges = self._base_edges(node, pred, step.direction)
        edges.sort(key=lambda e: e.target.sort_key())
        return edges

    def _qualifying(
        self, parcel_node: Term, prev: Term | None, step: GrammarStep, seeds: frozenset[Term]
    ) -> list[_Edge]:
        edges = self._edges(parcel_node, step)
        keep: list[_Edge] = []
        for edge in edges:
            t = edge.target
            if "exclude-previous-node" in step.filters and prev is not None and t == prev:
                continue
            if "exclude-seeds" in step.filters and t in seeds:
                continue
            if "not-self" in step.filters and t == parcel_node:
                continue
            if step.require_type is not None and not self._is_instance(t, step.require_type):
                continue
            keep.append(edge)
        return keep

    def _edge_decay(self, step: GrammarStep, edge: _Edge, cfg: WalkerConfig) -> float:
        if step.time_decay is not None:
            stamped = edge.stamped
            if stamped is None:
                return 0.0  # no timestamp: the association contributes nothing
            return step.time_decay.factor(cfg.now, stamped)  # type: ignore[arg-type]
        if step.decay is not None:
            return step.decay
        return cfg.decay

    # -- execution -------------------------------------------------------

    def execute(self, grammar: Grammar, seeds: list[Term], cfg: WalkerConfig) -> RankedList:
        _validate(self.store, grammar, seeds, cfg)
        with self.store.read_lock():
            if cfg.mode == "diffusion":
                scores = self._diffuse(grammar, seeds, cfg)
            else:
                scores, _ = self._montecarlo(grammar, seeds, cfg, want_stderr=False)
        return RankedList.from_scores(scores)

    def montecarlo_with_stderr(
        self, grammar: Grammar, seeds: list[Term], cfg: WalkerConfig
    ) -> tuple[RankedList, dict[Term, float]]:
        """Monte Carlo scores plus a per-resource standard error estimate."""
        cfg = replace(cfg, mode="montecarlo")
        _validate(self.store, grammar, seeds, cfg)
        with self.store.read_lock():
            scores, stderr = self._montecarlo(grammar, seeds, cfg, want_stderr=True)
        return RankedList.from_scores(scores), stderr

    def _next_state(self, grammar: Grammar, step_idx: int) -> tuple[int | None, float]:
        """Successor step index after ``step_idx``, with any loop-wrap factor."""
        nxt = step_idx + 1
        if nxt < len(grammar.steps):
            return nxt, 1.0
        if grammar.loop is not None:
            return grammar.loop.back_to_step, grammar.loop.decay_per_loop
        return None, 1.0

    def _diffuse(self, grammar: Grammar, seeds: list[Term], cfg: WalkerConfig) -> dict[Term, float]:
        seed_set = frozenset(seeds)
        counters: dict[Term, float] = {}
        # Parcels with identical (node, prev, step) behave identically; merge them.
        layer: dict[tuple[Term, Term | None, int], float] = {}
        for seed in sorted(set(seeds), key=lambda s: s.sort_key()):
            layer[(seed, None, 0)] = layer.get((seed, None, 0), 0.0) + cfg.initial_energy

        for _hop in range(cfg.max_steps):
            if not layer:
                break
            next_layer: dict[tuple[Term, Term | None, int], float] = {}
            for (node, prev, idx), energy in sorted(
                layer.items(), key=lambda kv: (kv[0][0].sort_key(), _prev_key(kv[0][1]), kv[0][2])
            ):
                step = grammar.steps[idx]
                edges = self._qualifying(node, prev, step, seed_set)
                if not edges:
                    continue
                share = energy / len(edges)
                next_idx, wrap = self._next_state(grammar, idx)
                for edge in edges:
                    arrived = share * self._edge_decay(step, edge, cfg)
                    if step.emit is not None and arrived != 0.0:
                        restriction = step.emit.type_restriction
                        if restriction is None or self._is_instance(edge.target, restriction):
                            counters[edge.target] = (
                                counters.get(edge.target, 0.0) + step.emit.sign * arrived
                            )
                    if next_idx is None:
                        continue
                    carried = arrived * wrap
                    if carried < cfg.energy_threshold:
                        continue
                    key = (edge.target, node, next_idx)
                    next_layer[key] = next_layer.get(key, 0.0) + carried
            layer = next_layer
        return counters

    def _montecarlo(
        self, grammar: Grammar, seeds: list[Term], cfg: WalkerConfig, want_stderr: bool
    ) -> tuple[dict[Term, float], dict[Term, float]]:
        seed_set = frozenset(seeds)
        rng = random.Random(cfg.rng_seed)
        totals: dict[Term, float] = {}
        variances: dict[Term, float] = {}
        for seed in sorted(set(seeds), key=lambda s: s.sort_key()):
            sums: dict[Term, float] = {}
            sumsq: dict[Term, float] = {}
            for _walker in range(cfg.walkers_per_seed):
                deposits = self._walk_once(grammar, seed, seed_set, cfg, rng)
                for term, value in deposits.items():
                    sums[term] = sums.get(term, 0.0) + value
                    sumsq[term] = sumsq.get(term, 0.0) + value * value
            w = float(cfg.walkers_per_seed)
            for term, total in sums.items():
                mean = total / w
                totals[term] = totals.get(term, 0.0) + mean
                if want_stderr:
                    var = max(0.0, sumsq.get(term, 0.0) / w - mean * mean)
                    variances[term] = variances.get(term, 0.0) + var / w
        stderr = {term: math.sqrt(v) for term, v in variances.items()} if want_stderr else {}
        return totals, stderr

    def _walk_once(
        self,
        grammar: Grammar,
        seed: Term,
        seed_set: frozenset[Term],
        cfg: WalkerConfig,
        rng: random.Random,
    ) -> dict[Term, float]:
        deposits: dict[Term, float] = {}
        node: Term = seed
        prev: Term | None = None
        idx: int | None = 0
        energy = cfg.initial_energy
        for _hop in range(cfg.max_steps):
            if idx is None:
                break
            step = grammar.steps[idx]
            edges = self._qualifying(node, prev, step, seed_set)
            if not edges:
                break
            edge = edges[rng.randrange(len(edges))]
            arrived = energy * self._edge_decay(step, edge, cfg)
            if step.emit is not None and arrived != 0.0:
                restriction = step.emit.type_restriction
                if restriction is None or self._is_instance(edge.target, restriction):
                    deposits[edge.target] = (
                        deposits.get(edge.target, 0.0) + step.emit.sign * arrived
                    )
            next_idx, wrap = self._next_state(grammar, idx)
            prev, node = node, edge.target
            idx = next_idx
            energy = arrived * wrap
            if energy < cfg.energy_threshold:
                break
        return deposits


def _prev_key(prev: Term | None) -> str:
    return "" if prev is None else prev.sort_key()


def execute(
    store: QuadStore, grammar: Grammar, seeds: list[Term], cfg: WalkerConfig | None = None
) -> RankedList:
    """One-shot walk over a store snapshot."""
    return WalkerEngine(store).execute(grammar, seeds, cfg or WalkerConfig())


# -- matrix oracle -------------------------------------------------------


def adjacency_matrix(store: QuadStore, predicate: str) -> sparse.csr_matrix:
    """0/1 adjacency over interned term ids; graph position is wildcarded.

    The derived transpose predicate (createdBy) is honoured.
    """
    n = store.term_count
    if predicate == CREATED_BY:
        return adjacency_matrix(store, CORE.created).T.tocsr()
    rows, cols = [], []
    for quad in store.match(p=IRI(predicate)):
        pair = (store.term_id(quad.s), store.term_id(quad.o))
        rows.append(pair[0])
        cols.append(pair[1])
    data = [1] * len(rows)
    mat = sparse.coo_matrix((data, (rows, cols)), shape=(n, n), dtype=float)
    mat.sum_duplicates()
    mat.data[:] = 1.0  # indicator, even with one edge per graph duplicated
    return mat.tocsr()


def coauthorship_matrix(store: QuadStore) -> sparse.csr_matrix:
    """Shared-item counts between distinct agents: (A_created @ A_createdBy) with zero diagonal."""
    created = adjacency_matrix(store, CORE.created)
    shared = (created @ created.T).tolil()
    shared.setdiag(0.0)
    return shared.tocsr()

"""Resource-value statistics computed straight off the quad indexes.

Self-citations count everywhere: no exclusion rule is baked in, which keeps
every metric equal to its brute-force definition and easy to audit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .namespaces import CORE
from .store import QuadStore
from .tagging import usage_stamps
from .terms import IRI, Literal, Term, parse_datetime

_CITES = IRI(CORE.cites)
_CREATED = IRI(CORE.created)
_CONTAINS = IRI(CORE.contains)
_CONTAINED_IN = IRI(CORE.containedIn)
_CREATION_TIME = IRI(CORE.creationTime)

METRICS = ("h_index", "citation_count", "co_usage", "impact_factor")


@dataclass(frozen=True, slots=True)
class MetricReport:
    resource: Term
    metric: str
    value: float
    window: tuple[str, str] | None = None  # publication window, impact factor only

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")
        if self.value < 0:
            raise ValueError("metric values are non-negative")
        if (self.window is not None) != (self.metric == "impact_factor"):
            raise ValueError("window is present exactly for impact_factor")


def citation_count(store: QuadStore, item: Term) -> int:
    """Distinct items citing ``item``."""
    return len({quad.s for quad in store.match(p=_CITES, o=item)})


def h_index(store: QuadStore, agent: Term) -> int:
    """Largest h with at least h created items cited at least h times each."""
    counts = sorted(
        (citation_count(store, item) for item in store.neighbors(agent, _CREATED, "out")),
        reverse=True,
    )
    h = 0
    for rank, cites in enumerate(counts, start=1):
        if cites >= rank:
            h = rank
        else:
            break
    return h


def co_usage(store: QuadStore, i: Term, j: Term) -> int:
    """Total recorded view transitions between i and j, both directions, all users."""
    total = 0
    for user in store.graphs():
        total += len(usage_stamps(store, user, i, j))
        total += len(usage_stamps(store, user, j, i))
    return total


def _creation_year(store: QuadStore, item: Term) -> int | None:
    for value in store.neighbors(item, _CREATION_TIME, "out"):
        if isinstance(value, Literal):
            try:
                return parse_datetime(value.lexical).year
            except ValueError:
                continue
    return None


def _collection_items(store: QuadStore, collection: Term) -> set[Term]:
    items = set(store.neighbors(collection, _CONTAINS, "out"))
    items.update(store.neighbors(collection, _CONTAINED_IN, "in"))
    return items


def impact_factor(store: QuadStore, collection: Term, year: int) -> float:
    """Citations made in ``year`` to the collection's items published in the
    two preceding years, per such item.  Undated citing items are skipped;
    an empty window yields 0.
    """
    window_items = {
        item
        for item in _collection_items(store, collection)
        if _creation_year(store, item) in (year - 1, year - 2)
    }
    if not window_items:
        return 0.0
    citations = 0
    for item in window_items:
        for citer in {quad.s for quad in store.match(p=_CITES, o=item)}:
            if _creation_year(store, citer) == year:
                citations += 1
    return citations / len(window_items)


def report(
    store: QuadStore, metric: str, resource: Term, other: Term | None = None, year: int | None = None
) -> MetricReport:
    """Uniform entry point used by the CLI and the HTTP layer."""
    if metric == "citation_count":
        return MetricReport(resource, metric, float(citation_count(store, resource)))
    if metric == "h_index":
        return MetricReport(resource, metric, float(h_index(store, resource)))
    if metric == "co_usage":
        if other is None:
            raise ValueError("co_usage needs the second resource")
        return MetricReport(resource, metric, float(co_usage(store, resource, other)))
    if metric == "impact_factor":
        if year is None:
            raise ValueError("impact_factor needs a year")
        window = (f"{year - 2}-01-01", f"{year - 1}-12-31")
        return MetricReport(resource, metric, impact_factor(store, resource, year), window)
    raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")

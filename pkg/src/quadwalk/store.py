"""In-memory quad store with permutation indexes and typed adjacency.

The store is tuned for one thing: constant-time-ish ``neighbors(node,
predicate, direction)`` lookups, which the walker engine hammers.  Four
permutation indexes (SPOG, POSG, OSPG, GSPO) answer arbitrary match
patterns; a dedicated adjacency map answers traversal queries with the
graph position wildcarded.

Terms are interned to dense integer ids internally; every public method
speaks :class:`~quadwalk.terms.Term`.

Concurrency: single writer, many readers.  Mutations take the write lock;
``read_lock()`` lets a long-running reader (the walker) hold a consistent
view.  All query methods return materialized lists, never live iterators.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Iterable, Iterator

from .nquads import NQuadsParseError, parse_nquads, serialize_nquads
from .terms import IRI, BlankNode, Literal, Quad, Term

#: Graph used for N-Quads lines that carry no graph label.
DEFAULT_GRAPH = IRI("urn:quadwalk:graph:default")

_OUT = "out"
_IN = "in"


class _RWLock:
    """Write-preferring readers/writer lock."""

    def __init__(self):
        self._cond = threading.Condition()
        self._readers = 0
        self._writer = False
        self._waiting_writers = 0

    def acquire_read(self):
        with self._cond:
            while self._writer or self._waiting_writers:
                self._cond.wait()
            self._readers += 1

    def release_read(self):
        with self._cond:
            self._readers -= 1
            if self._readers == 0:
                self._cond.notify_all()

    def acquire_write(self):
        with self._cond:
            self._waiting_writers += 1
            while self._writer or self._readers:
                self._cond.wait()
            self._waiting_writers -= 1
            self._writer = True

    def release_write(self):
        with self._cond:
            self._writer = False
            self._cond.notify_all()


class _ReadLockContext:
    def __init__(self, lock: _RWLock):
        self._lock = lock

    def __enter__(self):
        self._lock.acquire_read()
        return self

    def __exit__(self, *exc):
        self._lock.release_read()
        return False


class QuadStore:
    """A set of quads with four permutation indexes plus an adjacency map.

    ``journal`` names an optional append-only log replayed on start; every
    accepted insert/remove is appended, so a store reopened on the same
    path comes back with its previous contents.
    """

    def __init__(self, journal: str | Path | None = None):
        self._terms: list[Term] = []
        self._ids: dict[Term, int] = {}
        self._keys: list[str] = []  # id -> sort key (N-Quads serialization)
        self._quads: set[tuple[int, int, int, int]] = set()
        # Nested-dict permutation indexes; leaf level is a set of ids.
        self._spog: dict = {}
        self._posg: dict = {}
        self._ospg: dict = {}
        self._gspo: dict = {}
        # (node id, predicate id, direction) -> {neighbor id: support count}
        self._adj: dict[tuple[int, int, str], dict[int, int]] = {}
        self._pred_counts: dict[int, int] = {}
        self._blank_labels: set[str] = set()
        self._blank_counter = 0
        self._lock = _RWLock()
        self._journal_path = Path(journal) if journal else None
        self._journal_file = None
        if self._journal_path and self._journal_path.exists():
            self._replay_journal()

    # ---------------------------------------------------------------- interning

    def _intern(self, term: Term) -> int:
        tid = self._ids.get(term)
        if tid is None:
            tid = len(self._terms)
            self._ids[term] = tid
            self._terms.append(term)
            self._keys.append(term.sort_key())
            if isinstance(term, BlankNode):
                self._blank_labels.add(term.label)
        return tid

    def term_id(self, term: Term) -> int | None:
        """Dense id of an interned term, or None if never seen."""
        return self._ids.get(term)

    def id_term(self, tid: int) -> Term:
        return self._terms[tid]

    @property
    def term_count(self) -> int:
        return len(self._terms)

    # ---------------------------------------------------------------- mutation

    @staticmethod
    def _index_add(index: dict, a: int, b: int, c: int, d: int):
        index.setdefault(a, {}).setdefault(b, {}).setdefault(c, set()).add(d)

    @staticmethod
    def _index_drop(index: dict, a: int, b: int, c: int, d: int):
        level_b = index[a]
        level_c = level_b[b]
        leaf = level_c[c]
        leaf.discard(d)
        if not leaf:
            del level_c[c]
            if not level_c:
                del level_b[b]
                if not level_b:
                    del index[a]

    def _adj_add(self, key: tuple[int, int, str], neighbor: int):
        bucket = self._adj.setdefault(key, {})
        bucket[neighbor] = bucket.get(neighbor, 0) + 1

    def _adj_drop(self, key: tuple[int, int, str], neighbor: int):
        bucket = self._adj[key]
        bucket[neighbor] -= 1
        if bucket[neighbor] == 0:
            del bucket[neighbor]
            if not bucket:
                del self._adj[key]

    def insert(self, quad: Quad) -> bool:
        """Add a quad.  True if inserted, False if already present."""
        self._lock.acquire_write()
        try:
            return self._insert_locked(quad)
        finally:
            self._lock.release_write()

    def _insert_locked(self, quad: Quad) -> bool:
        s, p, o, g = (self._intern(t) for t in (quad.s, quad.p, quad.o, quad.g))
        key = (s, p, o, g)
        if key in self._quads:
            return False
        self._quads.add(key)
        self._index_add(self._spog, s, p, o, g)
        self._index_add(self._posg, p, o, s, g)
        self._index_add(self._ospg, o, s, p, g)
        self._index_add(self._gspo, g, s, p, o)
        self._adj_add((s, p, _OUT), o)
        self._adj_add((o, p, _IN), s)
        self._pred_counts[p] = self._pred_counts.get(p, 0) + 1
        self._journal_write("+", quad)
        return True

    def remove(self, quad: Quad) -> bool:
        """Remove a quad.  True if removed, False if it was absent."""
        self._lock.acquire_write()
        try:
            ids = tuple(self._ids.get(t) for t in (quad.s, quad.p, quad.o, quad.g))
            if None in ids or ids not in self._quads:
                return False
            s, p, o, g = ids
            self._quads.discard(ids)
            self._index_drop(self._spog, s, p, o, g)
            self._index_drop(self._posg, p, o, s, g)
            self._index_drop(self._ospg, o, s, p, g)
            self._index_drop(self._gspo, g, s, p, o)
            self._adj_drop((s, p, _OUT), o)
            self._adj_drop((o, p, _IN), s)
            self._pred_counts[p] -= 1
            if not self._pred_counts[p]:
                del self._pred_counts[p]
            self._journal_write("-", quad)
            return True
        finally:
            self._lock.release_write()

    # ---------------------------------------------------------------- queries

    def __len__(self) -> int:
        return len(self._quads)

    def __contains__(self, quad: Quad) -> bool:
        ids = tuple(self._ids.get(t) for t in (quad.s, quad.p, quad.o, quad.g))
        return None not in ids and ids in self._quads

    def _match_ids(self, s, p, o, g) -> Iterator[tuple[int, int, int, int]]:
        ids = []
        for term in (s, p, o, g):
            if term is None:
                ids.append(None)
            else:
                tid = self._ids.get(term)
                if tid is None:
                    return  # unknown term matches nothing
                ids.append(tid)
        si, pi, oi, gi = ids

        # Choose the permutation index with the longest bound prefix.
        if si is not None:
            order = (si, pi, oi, gi)
            yield from self._walk_index(self._spog, order, (0, 1, 2, 3))
        elif pi is not None:
            order = (pi, oi, si, gi)
            yield from self._walk_index(self._posg, order, (1, 2, 0, 3))
        elif oi is not None:
            order = (oi, si, pi, gi)
            yield from self._walk_index(self._ospg, order, (2, 0, 1, 3))
        elif gi is not None:
            order = (gi, si, pi, oi)
            yield from self._walk_index(self._gspo, order, (3, 0, 1, 2))
        else:
            yield from self._quads

    @staticmethod
    def _walk_index(index: dict, want, positions) -> Iterator[tuple[int, int, int, int]]:
        """Walk a nested-dict index; ``want[i]`` of None fans out at level i.

        ``positions[i]`` says where the i-th index component sits in (s,p,o,g).
        """
        quad = [0, 0, 0, 0]

        def rec(level: int, node):
            if level == 4:
                yield tuple(quad)
                return
            wanted = want[level]
            if level == 3:
                if wanted is not None:
                    if wanted in node:
                        quad[positions[3]] = wanted
                        yield tuple(quad)
                else:
                    for leaf in node:
                        quad[positions[3]] = leaf
                        yield tuple(quad)
                return
            if wanted is not None:
                child = node.get(wanted)
                if child is not None:
                    quad[positions[level]] = wanted
                    yield from rec(level + 1, child)
            else:
                for key, child in node.items():
                    quad[positions[level]] = key
                    yield from rec(level + 1, child)

        yield from rec(0, index)

    def match(
        self,
        s: Term | None = None,
        p: Term | None = None,
        o: Term | None = None,
        g: Term | None = None,
    ) -> list[Quad]:
        """Quads agreeing with every bound position, in SPOG-lexicographic order."""
        self._lock.acquire_read()
        try:
            found = [
                Quad(self._terms[a], self._terms[b], self._terms[c], self._terms[d])
                for a, b, c, d in self._match_ids(s, p, o, g)
            ]
        finally:
            self._lock.release_read()
        found.sort(key=Quad.sort_key)
        return found

    def neighbors(self, node: Term, predicate: IRI, direction: str) -> list[Term]:
        """Distinct p-neighbors of ``node``, the graph position wildcarded.

        ``out`` lists objects of (node, p, ?, *); ``in`` lists subjects of
        (?, p, node, *).  Sorted by term serialization.
        """
        if direction not in (_OUT, _IN):
            raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
        nid = self._ids.get(node)
        pid = self._ids.get(predicate)
        if nid is None or pid is None:
            return []
        bucket = self._adj.get((nid, pid, direction))
        if not bucket:
            return []
        ids = sorted(bucket, key=self._keys.__getitem__)
        return [self._terms[i] for i in ids]

    def degree(self, node: Term, predicate: IRI, direction: str) -> int:
        nid = self._ids.get(node)
        pid = self._ids.get(predicate)
        if nid is None or pid is None:
            return 0
        return len(self._adj.get((nid, pid, direction), ()))

    def predicates(self) -> list[IRI]:
        """Predicates currently used by at least one quad, sorted."""
        preds = [self._terms[pid] for pid in self._pred_counts]
        preds.sort(key=Term.sort_key)
        return preds  # type: ignore[return-value]

    def has_predicate(self, predicate: IRI) -> bool:
        pid = self._ids.get(predicate)
        return pid is not None and pid in self._pred_counts

    def has_node(self, term: Term) -> bool:
        """True if the term occurs in any subject or object position."""
        tid = self._ids.get(term)
        if tid is None:
            return False
        return tid in self._spog or tid in self._ospg

    def graphs(self) -> list[Term]:
        gs = [self._terms[gid] for gid in self._gspo]
        gs.sort(key=Term.sort_key)
        return gs

    def quads(self) -> list[Quad]:
        return self.match()

    def read_lock(self) -> _ReadLockContext:
        """Context manager for long reads (walks) excluding concurrent writers."""
        return _ReadLockContext(self._lock)

    # ---------------------------------------------------------------- bulk I/O

    def fresh_blank(self) -> BlankNode:
        """A blank node with a label unused anywhere in this store."""
        while True:
            self._blank_counter += 1
            label = f"b{self._blank_counter}"
            if label not in self._blank_labels:
                self._blank_labels.add(label)
                return BlankNode(label)

    def load_nquads(self, data: bytes | str, default_graph: IRI = DEFAULT_GRAPH) -> int:
        """Load N-Quads; returns the number of quads newly added.

        Blank node labels are scoped to this store: a label already in use
        here denotes a different node and is renamed on import (consistently
        within one load).
        """
        renames: dict[str, BlankNode] = {}

        def localize(term: Term) -> Term:
            if not isinstance(term, BlankNode):
                return term
            mapped = renames.get(term.label)
            if mapped is None:
                if term.label in self._blank_labels:
                    mapped = self.fresh_blank()
                else:
                    mapped = term
                    self._blank_labels.add(term.label)
                renames[term.label] = mapped
            return mapped

        added = 0
        self._lock.acquire_write()
        try:
            for quad in parse_nquads(data, default_graph):
                quad = Quad(localize(quad.s), quad.p, localize(quad.o), localize(quad.g))
                if self._insert_locked(quad):
                    added += 1
        finally:
            self._lock.release_write()
        return added

    def export_nquads(self, graph: Term | None = None) -> bytes:
        quads = self.quads() if graph is None else self.match(g=graph)
        return serialize_nquads(quads)

    # ---------------------------------------------------------------- journal

    def _journal_write(self, op: str, quad: Quad):
        if self._journal_path is None or self._journal_file is None:
            if self._journal_path is None:
                return
            self._journal_file = self._journal_path.open("a", encoding="utf-8")
        self._journal_file.write(f"{op} {quad.nq()}\n")
        self._journal_file.flush()

    def _replay_journal(self):
        text = self._journal_path.read_text(encoding="utf-8")
        path, self._journal_path = self._journal_path, None  # mute writes during replay
        try:
            for line_no, raw in enumerate(text.splitlines(), start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                op, _, stmt = line.partition(" ")
                if op not in ("+", "-"):
                    raise NQuadsParseError(line_no, f"journal op must be + or -, got {op!r}")
                try:
                    quad = next(parse_nquads(stmt, DEFAULT_GRAPH))
                except NQuadsParseError as exc:
                    raise NQuadsParseError(line_no, exc.reason) from exc
                if op == "+":
                    self._insert_locked(quad)
                else:
                    self.remove(quad)
        finally:
            self._journal_path = path

    def close(self):
        if self._journal_file is not None:
            self._journal_file.close()
            self._journal_file = None

from __future__ import annotations

import itertools
import random
import threading

import pytest

from quadwalk.store import DEFAULT_GRAPH, QuadStore
from quadwalk.terms import IRI, BlankNode, Literal, Quad, string_literal


def q(s: str, p: str, o: str, g: str) -> Quad:
    return Quad(IRI(f"urn:n:{s}"), IRI(f"urn:p:{p}"), IRI(f"urn:n:{o}"), IRI(f"urn:g:{g}"))


def test_insert_is_idempotent(store):
    quad = q("a", "p", "b", "g")
    assert store.insert(quad) is True
    assert store.insert(quad) is False
    assert len(store) == 1


def test_remove_returns_presence(store):
    quad = q("a", "p", "b", "g")
    store.insert(quad)
    assert store.remove(quad) is True
    assert store.remove(quad) is False
    assert len(store) == 0


def test_same_triple_in_two_graphs_is_two_quads(store):
    store.insert(q("a", "p", "b", "g1"))
    store.insert(q("a", "p", "b", "g2"))
    assert len(store) == 2
    assert len(store.match(s=IRI("urn:n:a"))) == 2


def test_match_every_binding_pattern(store):
    quads = [q("a", "p", "b", "g"), q("a", "q", "c", "g"), q("b", "p", "a", "h")]
    for quad in quads:
        store.insert(quad)
    reference = set(quads)
    terms: dict[int, set] = {0: set(), 1: set(), 2: set(), 3: set()}
    for quad in quads:
        for i, term in enumerate((quad.s, quad.p, quad.o, quad.g)):
            terms[i].add(term)
    for mask in itertools.product([False, True], repeat=4):
        for combo in itertools.product(
            *(sorted(terms[i], key=lambda t: t.nq()) if mask[i] else [None] for i in range(4))
        ):
            got = store.match(s=combo[0], p=combo[1], o=combo[2], g=combo[3])
            expected = sorted(
                (
                    quad
                    for quad in reference
                    if all(
                        combo[i] is None or (quad.s, quad.p, quad.o, quad.g)[i] == combo[i]
                        for i in range(4)
                    )
                ),
                key=Quad.sort_key,
            )
            assert got == expected, f"pattern {combo}"


def test_match_unknown_term_matches_nothing(store):
    store.insert(q("a", "p", "b", "g"))
    assert store.match(s=IRI("urn:n:zz")) == []


def test_neighbors_dedupe_across_graphs(store):
    store.insert(q("a", "p", "b", "g1"))
    store.insert(q("a", "p", "b", "g2"))
    store.insert(q("a", "p", "c", "g1"))
    out = store.neighbors(IRI("urn:n:a"), IRI("urn:p:p"), "out")
    assert out == [IRI("urn:n:b"), IRI("urn:n:c")]
    incoming = store.neighbors(IRI("urn:n:b"), IRI("urn:p:p"), "in")
    assert incoming == [IRI("urn:n:a")]


def test_neighbors_direction_validation(store):
    with pytest.raises(ValueError):
        store.neighbors(IRI("urn:n:a"), IRI("urn:p:p"), "sideways")


def test_degree_counts_distinct_neighbors(store):
    store.insert(q("a", "p", "b", "g1"))
    store.insert(q("a", "p", "b", "g2"))
    store.insert(q("a", "p", "c", "g1"))
    assert store.degree(IRI("urn:n:a"), IRI("urn:p:p"), "out") == 2


def test_has_node_subject_or_object_positions(store):
    store.insert(q("a", "p", "b", "g"))
    assert store.has_node(IRI("urn:n:a"))
    assert store.has_node(IRI("urn:n:b"))
    assert not store.has_node(IRI("urn:p:p"))
    assert not store.has_node(IRI("urn:g:g"))


def test_predicates_and_graphs_listing(store):
    store.insert(q("a", "p", "b", "g"))
    store.insert(q("a", "r", "b", "h"))
    assert store.predicates() == [IRI("urn:p:p"), IRI("urn:p:r")]
    assert set(store.graphs()) == {IRI("urn:g:g"), IRI("urn:g:h")}
    store.remove(q("a", "r", "b", "h"))
    assert store.predicates() == [IRI("urn:p:p")]


def test_literal_objects_roundtrip(store):
    quad = Quad(IRI("urn:n:a"), IRI("urn:p:p"), string_literal("hi\nthere"), IRI("urn:g:g"))
    store.insert(quad)
    assert store.match(o=string_literal("hi\nthere")) == [quad]


def test_load_nquads_renames_colliding_blank_labels(store):
    store.insert(Quad(BlankNode("b0"), IRI("urn:p:p"), IRI("urn:n:x"), IRI("urn:g:g")))
    added = store.load_nquads('_:b0 <urn:p:p> _:b0 <urn:g:h> .\n')
    assert added == 1
    loaded = store.match(g=IRI("urn:g:h"))[0]
    assert isinstance(loaded.s, BlankNode) and loaded.s.label != "b0"
    assert loaded.s == loaded.o  # consistent rename within one load


def test_load_nquads_keeps_fresh_labels(store):
    added = store.load_nquads('_:n9 <urn:p:p> <urn:n:x> .\n')
    assert added == 1
    assert store.match()[0].s == BlankNode("n9")


def test_export_round_trips_through_load(store):
    store.insert(q("a", "p", "b", "g"))
    store.insert(Quad(IRI("urn:n:a"), IRI("urn:p:p"), Literal("v", lang="en"), IRI("urn:g:g")))
    data = store.export_nquads()
    other = QuadStore()
    other.load_nquads(data.decode("utf-8"))
    assert other.export_nquads() == data


def test_export_single_graph(store):
    store.insert(q("a", "p", "b", "g"))
    store.insert(q("a", "p", "b", "h"))
    only_g = store.export_nquads(graph=IRI("urn:g:g")).decode()
    assert "urn:g:g" in only_g and "urn:g:h" not in only_g


def test_journal_replay_restores_state(tmp_path):
    journal = tmp_path / "journal.nq"
    first = QuadStore(journal=journal)
    first.insert(q("a", "p", "b", "g"))
    first.insert(q("a", "p", "c", "g"))
    first.remove(q("a", "p", "b", "g"))
    first.close()

    second = QuadStore(journal=journal)
    assert second.quads() == [q("a", "p", "c", "g")]
    second.insert(q("d", "p", "e", "g"))
    second.close()

    third = QuadStore(journal=journal)
    assert set(third.quads()) == {q("a", "p", "c", "g"), q("d", "p", "e", "g")}
    third.close()


def test_journal_survives_noop_operations(tmp_path):
    journal = tmp_path / "journal.nq"
    first = QuadStore(journal=journal)
    first.insert(q("a", "p", "b", "g"))
    first.insert(q("a", "p", "b", "g"))  # duplicate: must not journal twice
    first.remove(q("zz", "p", "zz", "g"))  # absent: must not journal
    first.close()
    second = QuadStore(journal=journal)
    assert second.quads() == [q("a", "p", "b", "g")]
    second.close()


def model_check(ops: int, seed: int) -> None:
    rng = random.Random(seed)
    store = QuadStore()
    reference: set[Quad] = set()
    nodes = [IRI(f"urn:n:{i}") for i in range(12)]
    preds = [IRI(f"urn:p:{i}") for i in range(4)]
    graphs = [IRI(f"urn:g:{i}") for i in range(3)]
    lits = [string_literal(f"v{i}") for i in range(3)]

    def random_quad() -> Quad:
        return Quad(
            rng.choice(nodes),
            rng.choice(preds),
            rng.choice(nodes + lits),
            rng.choice(graphs),
        )

    for step in range(ops):
        action = rng.random()
        if action < 0.45:
            quad = random_quad()
            assert store.insert(quad) == (quad not in reference), step
            reference.add(quad)
        elif action < 0.8:
            quad = rng.choice(sorted(reference, key=Quad.sort_key)) if reference and rng.random() < 0.7 else random_quad()
            assert store.remove(quad) == (quad in reference), step
            reference.discard(quad)
        else:
            pattern = [
                rng.choice(nodes + [None]),
                rng.choice(preds + [None]),
                rng.choice(nodes + lits + [None]),
                rng.choice(graphs + [None]),
            ]
            got = store.match(s=pattern[0], p=pattern[1], o=pattern[2], g=pattern[3])
            expected = sorted(
                (
                    quad
                    for quad in reference
                    if all(
                        pattern[i] is None or (quad.s, quad.p, quad.o, quad.g)[i] == pattern[i]
                        for i in range(4)
                    )
                ),
                key=Quad.sort_key,
            )
            assert got == expected, step
    assert sorted(reference, key=Quad.sort_key) == store.quads()


def test_model_check_small():
    model_check(ops=3000, seed=11)


def test_concurrent_readers_with_writer():
    store = QuadStore()
    for i in range(50):
        store.insert(q(f"a{i}", "p", f"b{i}", "g"))
    errors: list[Exception] = []

    def reader():
        try:
            for _ in range(200):
                store.match(p=IRI("urn:p:p"))
                store.neighbors(IRI("urn:n:a1"), IRI("urn:p:p"), "out")
        except Exception as exc:  # pragma: no cover - failure path
            errors.append(exc)

    def writer():
        try:
            for i in range(200):
                quad = q(f"w{i}", "p", "b", "g")
                store.insert(quad)
                store.remove(quad)
        except Exception as exc:  # pragma: no cover - failure path
            errors.append(exc)

    threads = [threading.Thread(target=reader) for _ in range(4)] + [
        threading.Thread(target=writer)
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors


def test_default_graph_constant_is_iri():
    assert isinstance(DEFAULT_GRAPH, IRI)

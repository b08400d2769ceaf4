from __future__ import annotations

import random

import pytest

from quadwalk.namespaces import CORE, OWL, RDF, RELATION
from quadwalk.store import QuadStore
from quadwalk.terms import IRI, Quad
from quadwalk.vocab import (
    UnknownClassError,
    UnknownPropertyError,
    Vocabulary,
    asserted_types,
    is_instance,
    load_vocabulary,
    most_specific_class,
)

GRAPH = IRI("urn:g:t")


def typed(store: QuadStore, node: str, cls: str):
    store.insert(Quad(IRI(node), IRI(RDF.type), IRI(cls), GRAPH))


def test_article_closure_walks_to_root():
    v = load_vocabulary()
    assert v.subclass_closure(CORE.Article) == frozenset(
        {CORE.Article, CORE.Document, CORE.Item, CORE.Reefsource, OWL.Thing}
    )


def test_closure_is_reflexive():
    v = load_vocabulary()
    for cls in v.classes:
        assert cls in v.subclass_closure(cls)


def test_unknown_class_raises():
    v = load_vocabulary()
    with pytest.raises(UnknownClassError):
        v.subclass_closure("urn:not:aclass")


def test_is_instance_uses_subclass_rule():
    store = QuadStore()
    v = load_vocabulary()
    typed(store, "urn:n:x", CORE.Article)
    x = IRI("urn:n:x")
    for cls in (CORE.Article, CORE.Document, CORE.Item, CORE.Reefsource, OWL.Thing):
        assert is_instance(store, v, x, cls)
    assert not is_instance(store, v, x, CORE.Person)
    assert not is_instance(store, v, x, CORE.Webpage)  # sibling, not ancestor


def test_everything_is_a_thing_even_untyped():
    store = QuadStore()
    v = load_vocabulary()
    assert is_instance(store, v, IRI("urn:n:ghost"), OWL.Thing)
    assert not is_instance(store, v, IRI("urn:n:ghost"), CORE.Item)


def test_domain_range_never_entail_types():
    # x cites y implies nothing about y's classes under our two rules.
    store = QuadStore()
    v = load_vocabulary()
    store.insert(Quad(IRI("urn:n:x"), IRI(CORE.cites), IRI("urn:n:y"), GRAPH))
    assert not is_instance(store, v, IRI("urn:n:y"), CORE.Item)


def test_asserted_types_skips_literal_objects():
    store = QuadStore()
    from quadwalk.terms import string_literal

    store.insert(Quad(IRI("urn:n:x"), IRI(RDF.type), string_literal("oops"), GRAPH))
    typed(store, "urn:n:x", CORE.Person)
    assert asserted_types(store, IRI("urn:n:x")) == [CORE.Person]


def test_most_specific_class_prefers_deepest():
    store = QuadStore()
    v = load_vocabulary()
    typed(store, "urn:n:x", CORE.Item)
    typed(store, "urn:n:x", CORE.Article)
    assert most_specific_class(store, v, IRI("urn:n:x")) == CORE.Article


def test_most_specific_class_ties_break_lexicographically():
    store = QuadStore()
    v = load_vocabulary()
    typed(store, "urn:n:x", CORE.Article)
    typed(store, "urn:n:x", CORE.Webpage)  # same depth as Article
    assert most_specific_class(store, v, IRI("urn:n:x")) == CORE.Article


def test_most_specific_class_none_for_untyped():
    store = QuadStore()
    v = load_vocabulary()
    assert most_specific_class(store, v, IRI("urn:n:x")) is None


def test_abbreviations_are_unique_two_letters():
    v = load_vocabulary()
    assert v.abbreviation(CORE.Person) == "Pe"
    assert v.abbreviation(CORE.Article) == "Ar"
    assert v.abbreviation("urn:not:aclass") is None
    seen = list(v.abbrev.values())
    assert len(seen) == len(set(seen))
    assert all(len(ab) == 2 for ab in seen)


def test_property_table_lookup():
    v = load_vocabulary()
    assert v.domain(CORE.cites) == CORE.Item
    assert v.range(CORE.created) == CORE.Item
    with pytest.raises(UnknownPropertyError):
        v.domain("urn:not:aprop")


def test_relation_classes_present():
    v = load_vocabulary()
    assert RELATION.related in v.subclass_closure(RELATION.related)
    assert RELATION.Relation in v.subclass_closure(RELATION.usage)


def test_vocabulary_rejects_cycles():
    with pytest.raises(ValueError, match="cycle"):
        Vocabulary(
            root="urn:c:root",
            subclass_of={"urn:c:a": ("urn:c:b",), "urn:c:b": ("urn:c:a",)},
            properties={},
            subproperty_of={},
            abbrev={},
        )


def test_vocabulary_rejects_bad_abbreviations():
    with pytest.raises(ValueError, match="2 characters"):
        Vocabulary("urn:c:r", {}, {}, {}, abbrev={"urn:c:r": "XYZ"})
    with pytest.raises(ValueError, match="reused"):
        Vocabulary(
            "urn:c:r",
            {"urn:c:a": ("urn:c:r",)},
            {},
            {},
            abbrev={"urn:c:r": "Xx", "urn:c:a": "Xx"},
        )


def test_to_quads_contains_tree_and_table():
    v = load_vocabulary()
    store = QuadStore()
    for quad in v.to_quads():
        store.insert(quad)
    assert store.match(
        s=IRI(CORE.Article),
        p=IRI("http://www.w3.org/2000/01/rdf-schema#subClassOf"),
        o=IRI(CORE.Document),
    )
    assert store.match(
        s=IRI(CORE.cites),
        p=IRI("http://www.w3.org/2000/01/rdf-schema#domain"),
        o=IRI(CORE.Item),
    )


def naive_closure(parents: dict[str, tuple[str, ...]], cls: str) -> frozenset[str]:
    # Independent oracle: iterate-to-fixpoint set expansion.
    out = {cls}
    while True:
        grown = set(out)
        for member in out:
            grown.update(parents.get(member, ()))
        if grown == out:
            return frozenset(out)
        out = grown


def random_dag(rng: random.Random, size: int) -> dict[str, tuple[str, ...]]:
    # Parents always have strictly larger index, so acyclicity holds by
    # construction; the root is node with the top index.
    names = [f"urn:c:n{i}" for i in range(size)]
    parents: dict[str, tuple[str, ...]] = {}
    for i in range(size - 1):
        count = rng.randint(1, min(3, size - 1 - i))
        parents[names[i]] = tuple(
            sorted(rng.sample(names[i + 1 :], count))
        )
    return parents


def test_closure_matches_fixpoint_oracle_on_random_dags():
    rng = random.Random(20240917)
    for _ in range(100):
        size = rng.randint(2, 25)
        parents = random_dag(rng, size)
        root = f"urn:c:n{size - 1}"
        vocab = Vocabulary(root, parents, {}, {}, {})
        for cls in vocab.classes:
            assert vocab.subclass_closure(cls) == naive_closure(parents, cls)


def test_subproperty_closure_matches_fixpoint_oracle():
    rng = random.Random(7)
    for _ in range(25):
        size = rng.randint(2, 12)
        parents = random_dag(rng, size)
        vocab = Vocabulary("urn:c:root", {}, {}, parents, {})
        for prop in parents:
            assert vocab.subproperty_closure(prop) == naive_closure(parents, prop)

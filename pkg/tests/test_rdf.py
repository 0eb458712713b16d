"""Core data model: graphs, entity sets, and set operations."""

from __future__ import annotations

import pytest

from conftest import ex, lit
from kgie.rdf import (
    RDF_TYPE,
    Graph,
    Iri,
    Literal,
    Triple,
    graph_difference,
    graph_union,
)


def small_graph() -> Graph:
    return Graph(
        [
            Triple(ex("film1"), RDF_TYPE, ex("Film")),
            Triple(ex("film1"), ex("directedBy"), ex("p1")),
            Triple(ex("film1"), ex("runtime"), lit("120")),
            Triple(ex("p1"), RDF_TYPE, ex("Person")),
        ]
    )


def test_literal_rejects_datatype_plus_language():
    with pytest.raises(ValueError):
        Literal("x", datatype=ex("dt"), language="en")


def test_iri_local_name():
    assert Iri("http://x/a#frag").local_name() == "frag"
    assert Iri("http://x/path/leaf").local_name() == "leaf"
    assert Iri("urn:x").local_name() == "urn:x"


def test_entities_exclude_type_objects_and_literals():
    g = small_graph()
    assert g.entities() == {ex("film1"), ex("p1")}


def test_entities_include_iri_objects_of_relations():
    g = Graph([Triple(ex("a"), ex("p"), ex("b"))])
    assert g.entities() == {ex("a"), ex("b")}


def test_classes_used():
    assert small_graph().classes_used() == {ex("Film"), ex("Person")}


def test_relation_and_attribute_triples():
    g = small_graph()
    assert {t.predicate for t in g.relation_triples()} == {ex("directedBy")}
    assert {t.predicate for t in g.attribute_triples()} == {ex("runtime")}


def test_graph_set_behavior():
    t = Triple(ex("a"), ex("p"), ex("b"))
    g = Graph([t, t])
    assert len(g) == 1
    assert t in g
    g.discard(t)
    assert len(g) == 0


def test_copy_is_independent():
    g = small_graph()
    h = g.copy()
    h.add(Triple(ex("new"), RDF_TYPE, ex("Film")))
    assert len(h) == len(g) + 1


def test_objects_lookup():
    g = small_graph()
    assert g.objects(ex("film1"), ex("runtime")) == [lit("120")]
    assert g.objects(ex("film1"), ex("missing")) == []


def test_graph_difference_identity_cases():
    g = small_graph()
    assert len(graph_difference(g, g)) == 0
    assert graph_difference(g, Graph()) == g


def test_graph_difference_hand_count():
    shared = [Triple(ex("a"), ex("p"), lit(str(i))) for i in range(2)]
    only_a = [Triple(ex("a"), ex("q"), lit(str(i))) for i in range(3)]
    a = Graph(shared + only_a)
    b = Graph(shared + [Triple(ex("b"), ex("p"), lit("9"))])
    assert len(graph_difference(a, b)) == 3


def test_difference_plus_intersection_restores_left_operand():
    a = small_graph()
    b = Graph(list(a)[:2] + [Triple(ex("z"), ex("p"), lit("v"))])
    intersection = Graph(a.triples() & b.triples())
    assert graph_union(graph_difference(a, b), intersection) == a


def test_graph_equality_is_set_equality():
    t1 = Triple(ex("a"), ex("p"), ex("b"))
    t2 = Triple(ex("a"), ex("p"), lit("b"))
    assert Graph([t1, t2]) == Graph([t2, t1])
    assert Graph([t1]) != Graph([t2])
    assert Graph([t1]) != frozenset([t1])

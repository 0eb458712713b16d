"""Graph statistics and pair-set precision/recall."""

from __future__ import annotations

import pytest

from conftest import FILM, PERSON, ex, lit
from kgie.nt import parse_ntriples, serialize_ntriples
from kgie.rdf import RDF_TYPE, RDFS_LABEL, Graph, Triple
from kgie.stats import StatsRecord, graph_stats, normalized_pair, precision_recall


def test_empty_graph_stats():
    assert graph_stats(Graph()) == StatsRecord(
        fact_count=0,
        entity_count=0,
        relation_count=0,
        relation_count_incl_type=0,
        type_count=0,
        untyped_count=0,
        density=0.0,
    )


def test_density_of_complete_directed_triangle():
    g = Graph(
        [
            Triple(ex(a), ex("linked"), ex(b))
            for a in ("x", "y", "z")
            for b in ("x", "y", "z")
            if a != b
        ]
    )
    stats = graph_stats(g)
    assert stats.entity_count == 3
    assert stats.fact_count == 6
    assert stats.density == 1.0


def test_density_zero_below_two_entities():
    g = Graph([Triple(ex("only"), RDFS_LABEL, lit("Only"))])
    assert graph_stats(g).density == 0.0


def test_counts_on_mixed_graph():
    g = Graph(
        [
            Triple(ex("f"), RDF_TYPE, FILM),
            Triple(ex("f"), RDFS_LABEL, lit("F")),
            Triple(ex("f"), ex("directedBy"), ex("p")),
            Triple(ex("p"), RDFS_LABEL, lit("P")),
        ]
    )
    stats = graph_stats(g)
    assert stats.fact_count == 4
    assert stats.entity_count == 2  # f and p; the class IRI is not an entity
    assert stats.relation_count == 2  # rdfs:label and directedBy
    assert stats.relation_count_incl_type == 3
    assert stats.type_count == 1
    assert stats.untyped_count == 1  # p carries no type
    assert stats.density == pytest.approx(0.5)  # one of two directed pairs


def test_stats_invariant_under_serialization_round_trip():
    g = Graph(
        [
            Triple(ex("a"), RDF_TYPE, FILM),
            Triple(ex("a"), ex("rel"), ex("b")),
            Triple(ex("b"), RDFS_LABEL, lit("béta", language="fr")),
        ]
    )
    assert graph_stats(parse_ntriples(serialize_ntriples(g))) == graph_stats(g)


def test_duration_is_passed_through():
    assert graph_stats(Graph()).duration_s is None
    assert graph_stats(Graph(), duration_s=1.25).duration_s == 1.25


def test_normalized_pair_orders_elements():
    assert normalized_pair("b", "a") == ("a", "b")
    assert normalized_pair("a", "b") == ("a", "b")
    assert normalized_pair("x", "x") == ("x", "x")


def test_precision_recall_four_of_five():
    gold = {("a", "b"), ("c", "d"), ("e", "f"), ("g", "h")}
    predicted = gold | {("i", "j")}
    assert precision_recall(gold, predicted) == (0.8, 1.0)


def test_precision_recall_forty_nine_of_fifty():
    gold = {(f"g{i}", f"h{i}") for i in range(49)}
    predicted = gold | {("extra", "pair")}
    precision, recall = precision_recall(gold, predicted)
    assert precision == pytest.approx(0.98)
    assert recall == 1.0


def test_precision_recall_none_conventions():
    pairs = {("a", "b")}
    assert precision_recall(pairs, set()) == (None, 0.0)
    assert precision_recall(set(), pairs) == (0.0, None)
    assert precision_recall(set(), set()) == (None, None)


def test_precision_recall_with_normalized_input_is_order_insensitive():
    gold = {normalized_pair("b", "a")}
    predicted = {normalized_pair("a", "b")}
    assert precision_recall(gold, predicted) == (1.0, 1.0)

"""Descriptive graph statistics and pair-set precision/recall."""

from __future__ import annotations

from dataclasses import dataclass

from .rdf import RDF_TYPE, Graph, Iri


@dataclass(frozen=True)
class StatsRecord:
    fact_count: int
    entity_count: int
    relation_count: int
    relation_count_incl_type: int
    type_count: int
    untyped_count: int
    density: float
    duration_s: float | None = None


def graph_stats(graph: Graph, duration_s: float | None = None) -> StatsRecord:
    """Counts and density of a graph.

    ``relation_count`` counts distinct predicates excluding ``rdf:type``;
    the inclusive variant is reported alongside because both conventions
    are common.  Density relates entity-to-entity triples to the possible
    directed pairs and is 0 for graphs with fewer than two entities.
    """
    entities = graph.entities()
    predicates = graph.predicates()
    typed = {t.subject for t in graph if t.predicate == RDF_TYPE and isinstance(t.object, Iri)}
    entity_count = len(entities)
    relation_triples = len(graph.relation_triples())
    density = relation_triples / (entity_count * (entity_count - 1)) if entity_count >= 2 else 0.0
    return StatsRecord(
        fact_count=len(graph),
        entity_count=entity_count,
        relation_count=len(predicates - {RDF_TYPE}),
        relation_count_incl_type=len(predicates),
        type_count=len(graph.classes_used()),
        untyped_count=len(entities - typed),
        density=density,
        duration_s=duration_s,
    )


def normalized_pair(a: str, b: str) -> tuple[str, str]:
    """Order-normalized id pair, so (a, b) and (b, a) compare equal."""
    return (a, b) if a <= b else (b, a)


def precision_recall(
    gold: set[tuple[str, str]], predicted: set[tuple[str, str]]
) -> tuple[float | None, float | None]:
    """Precision and recall over order-normalized pair sets.

    Precision is undefined (``None``) for an empty prediction set, recall
    for an empty gold set.
    """
    true_positives = len(gold & predicted)
    precision = true_positives / len(predicted) if predicted else None
    recall = true_positives / len(gold) if gold else None
    return precision, recall

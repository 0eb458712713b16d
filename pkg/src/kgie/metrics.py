"""Coverage, correctness, and duplicate-rate metrics.

All metrics evaluate a produced graph against a reference graph under an
entity alignment, restricted to an evaluation scope: the produced side
minus the seed, and the reference side restricted to content that became
available up to the evaluated stage, minus what the seed already covered.

A ratio whose denominator is empty is undefined and reported as ``None``,
which is deliberately distinct from 0.0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alignment import (
    AlignmentConfig,
    AlignmentRelation,
    align_entities,
    matched_sets,
)
from .ontology import Ontology, asserted_type_map, closed_type_map
from .rdf import Graph, Iri, Triple


@dataclass(frozen=True)
class EvalScope:
    """Evaluation sets for one integration stage.

    ``stage_reference_entities`` is the stage-restricted reference entity
    set before seed exclusion; the ``*_eval`` sets have the seed's
    contribution removed.
    """

    stage: int
    produced_eval_entities: frozenset[Iri]
    produced_eval_triples: frozenset[Triple]
    reference_eval_entities: frozenset[Iri]
    reference_eval_triples: frozenset[Triple]
    stage_reference_entities: frozenset[Iri]
    seed_exclusion: str = "gold"


def build_scope(
    seed: Graph,
    produced: Graph,
    reference: Graph,
    stage_entities: dict[int, set[Iri]],
    stage: int,
    ontology: Ontology | None = None,
    cfg: AlignmentConfig | None = None,
    seed_matcher: bool = False,
) -> EvalScope:
    """Build the evaluation scope for ``stage``.

    ``stage_entities`` maps each provenance stage (0 = seed) to the
    reference entities that first appear there.  Seed exclusion uses gold
    identity by default; with ``seed_matcher`` the configured label
    matcher decides instead, which requires ``ontology`` and ``cfg``.
    """
    if stage < 1:
        raise ValueError("stage must be >= 1")
    known_stages = [s for s in stage_entities if s > 0]
    if not known_stages or stage > max(known_stages):
        raise ValueError(f"stage {stage} exceeds manifest stages")

    in_scope: set[Iri] = set()
    for s, ents in stage_entities.items():
        if s <= stage:
            in_scope.update(ents)
    stage_triples = {t for t in reference if t.subject in in_scope}

    if seed_matcher:
        if ontology is None or cfg is None:
            raise ValueError("seed_matcher needs an ontology and alignment config")
        seed_alignment = align_entities(seed, reference, ontology, cfg)
        covered_entities = seed_alignment.aligned_references()
        covered_triples = matched_sets(seed, reference, seed_alignment, cfg, ontology).reference
        exclusion = "matcher"
    else:
        covered_entities = seed.entities()
        covered_triples = seed.triples()
        exclusion = "gold"

    return EvalScope(
        stage=stage,
        produced_eval_entities=frozenset(produced.entities() - seed.entities()),
        produced_eval_triples=frozenset(produced.triples() - seed.triples()),
        reference_eval_entities=frozenset(in_scope - covered_entities),
        reference_eval_triples=frozenset(stage_triples - covered_triples),
        stage_reference_entities=frozenset(in_scope),
        seed_exclusion=exclusion,
    )


def _ratio(numerator: int, denominator: int) -> float | None:
    if denominator == 0:
        return None
    return min(1.0, numerator / denominator)


def _covered_reference_entities(
    scope: EvalScope,
    produced: Graph,
    reference: Graph,
    alignment: AlignmentRelation,
    ontology: Ontology,
) -> set[Iri]:
    """Eval references with an aligned, type-compatible produced partner.

    The type condition is asserted reference types against upward-closed
    produced types, so extra compatible types on the produced side are
    allowed.
    """
    ref_types = asserted_type_map(reference, ontology)
    produced_types = closed_type_map(produced, ontology)
    covered: set[Iri] = set()
    for r in scope.reference_eval_entities:
        wanted = ref_types.get(r, set())
        for e in alignment.produced_for(r):
            if wanted <= produced_types.get(e, set()):
                covered.add(r)
                break
    return covered


def entity_coverage(
    scope: EvalScope,
    produced: Graph,
    reference: Graph,
    alignment: AlignmentRelation,
    ontology: Ontology,
) -> float | None:
    """Fraction of eval reference entities represented in the produced graph."""
    if not scope.reference_eval_entities:
        return None
    covered = _covered_reference_entities(scope, produced, reference, alignment, ontology)
    return _ratio(len(covered), len(scope.reference_eval_entities))


def fact_coverage(
    scope: EvalScope,
    produced: Graph,
    reference: Graph,
    alignment: AlignmentRelation,
    cfg: AlignmentConfig,
    ontology: Ontology | None = None,
) -> float | None:
    """Fraction of eval reference triples with a matching produced triple."""
    if not scope.reference_eval_triples:
        return None
    matched = matched_sets(produced, reference, alignment, cfg, ontology).reference
    return _ratio(len(matched & scope.reference_eval_triples), len(scope.reference_eval_triples))


def entity_correctness(
    scope: EvalScope,
    produced: Graph,
    reference: Graph,
    alignment: AlignmentRelation,
    ontology: Ontology,
) -> float | None:
    """Distinct eval references reached per produced eval entity.

    Counting distinct reference entities in the numerator makes duplicated
    produced entities lower the score even when each duplicate aligns.
    """
    if not scope.produced_eval_entities:
        return None
    ref_types = asserted_type_map(reference, ontology)
    produced_types = closed_type_map(produced, ontology)
    type_correct: set[Iri] = set()
    for r in scope.stage_reference_entities:
        wanted = ref_types.get(r, set())
        for e in alignment.produced_for(r):
            if wanted <= produced_types.get(e, set()):
                type_correct.add(e)
    reached = {
        r
        for r in scope.reference_eval_entities
        if any(e in type_correct for e in alignment.produced_for(r))
    }
    return _ratio(len(reached), len(scope.produced_eval_entities))


def fact_correctness(
    scope: EvalScope,
    produced: Graph,
    reference: Graph,
    alignment: AlignmentRelation,
    cfg: AlignmentConfig,
    ontology: Ontology | None = None,
) -> float | None:
    """Distinct matched eval reference triples per produced eval triple."""
    if not scope.produced_eval_triples:
        return None
    matched = matched_sets(produced, reference, alignment, cfg, ontology).reference
    return _ratio(len(matched & scope.reference_eval_triples), len(scope.produced_eval_triples))


def duplicate_rate(produced: Graph, alignment: AlignmentRelation) -> float:
    """Surplus produced entities per reference entity, over all produced entities.

    Each reference entity tolerates one aligned produced entity; every
    further one counts as a duplicate.  An empty produced graph scores 0.
    """
    entities = produced.entities()
    if not entities:
        return 0.0
    surplus = 0
    for r in alignment.aligned_references():
        partners = alignment.produced_for(r) & entities
        surplus += max(0, len(partners) - 1)
    return min(1.0, surplus / len(entities))


def source_coverage(
    produced: Graph,
    source: Graph,
    alignment: AlignmentRelation,
    cfg: AlignmentConfig,
    ontology: Ontology | None = None,
) -> float | None:
    """Fraction of source triples that made it into the produced graph.

    ``alignment`` relates produced entities to source entities (the source
    plays the reference role of the triple matcher).
    """
    if not len(source):
        return None
    matched = matched_sets(produced, source, alignment, cfg, ontology).reference
    return _ratio(len(matched), len(source))


@dataclass(frozen=True)
class QualityScores:
    cov_e: float | None
    cov_t: float | None
    corr_e: float | None
    corr_t: float | None
    dup_rate: float | None
    source_cov: float | None = None


def quality_scores(
    scope: EvalScope,
    produced: Graph,
    reference: Graph,
    alignment: AlignmentRelation,
    cfg: AlignmentConfig,
    ontology: Ontology,
    source: Graph | None = None,
    source_alignment: AlignmentRelation | None = None,
) -> QualityScores:
    """All quality metrics for one stage, sharing the matched-set computation."""
    matched = matched_sets(produced, reference, alignment, cfg, ontology).reference
    matched_eval = matched & scope.reference_eval_triples
    cov_t = (
        _ratio(len(matched_eval), len(scope.reference_eval_triples))
        if scope.reference_eval_triples
        else None
    )
    corr_t = (
        _ratio(len(matched_eval), len(scope.produced_eval_triples))
        if scope.produced_eval_triples
        else None
    )
    src_cov = None
    if source is not None and source_alignment is not None:
        src_cov = source_coverage(produced, source, source_alignment, cfg, ontology)
    return QualityScores(
        cov_e=entity_coverage(scope, produced, reference, alignment, ontology),
        cov_t=cov_t,
        corr_e=entity_correctness(scope, produced, reference, alignment, ontology),
        corr_t=corr_t,
        dup_rate=duplicate_rate(produced, alignment),
        source_cov=src_cov,
    )

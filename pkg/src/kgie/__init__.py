"""kgie: evaluate knowledge-graph integration pipelines.

Scores produced knowledge graphs against a reference along coverage,
correctness, and consistency; generates benchmark datasets with
controlled overlap and namespace shading; ranks pipelines under
exhaustive weight grids; and ships a baseline RDF integration pipeline.
"""

__version__ = "0.1.0"

from .alignment import (
    EXACT_IRI,
    GOLD_PROVENANCE,
    LABEL_SIMILARITY,
    AlignedPair,
    AlignmentConfig,
    AlignmentRelation,
    align_entities,
    literal_equivalent,
    match_triple,
    matched_sets,
    normalize_label,
    trigram_dice,
)
from .benchgen import BenchmarkManifest, SplitConfig, generate_benchmark, split_reference
from .consistency import ConsistencyReport, Finding, consistency_report, valid_for_datatype
from .metrics import EvalScope, QualityScores, build_scope, duplicate_rate, quality_scores
from .nt import load_graph, parse_ntriples, save_graph, serialize_ntriples
from .ontology import Ontology, PropertySpec, load_ontology
from .pipeline import PipelineConfig, StageLog, run_pipeline
from .ranking import (
    GroupScores,
    group_scores,
    harmonic_mean,
    rank_ranges,
    total_score,
    weight_grid,
)
from .rdf import Graph, Iri, Literal, OntologyError, ParseError, Triple
from .report import build_report, load_report, render_reports, save_report
from .rng import SplitMix64
from .stats import StatsRecord, graph_stats, precision_recall

__all__ = [
    "__version__",
    "AlignedPair",
    "AlignmentConfig",
    "AlignmentRelation",
    "BenchmarkManifest",
    "ConsistencyReport",
    "EXACT_IRI",
    "EvalScope",
    "GOLD_PROVENANCE",
    "LABEL_SIMILARITY",
    "Finding",
    "Graph",
    "GroupScores",
    "Iri",
    "Literal",
    "Ontology",
    "OntologyError",
    "ParseError",
    "PipelineConfig",
    "PropertySpec",
    "QualityScores",
    "SplitConfig",
    "SplitMix64",
    "StageLog",
    "StatsRecord",
    "Triple",
    "align_entities",
    "build_report",
    "build_scope",
    "consistency_report",
    "duplicate_rate",
    "generate_benchmark",
    "graph_stats",
    "group_scores",
    "harmonic_mean",
    "literal_equivalent",
    "load_graph",
    "load_ontology",
    "load_report",
    "match_triple",
    "matched_sets",
    "normalize_label",
    "parse_ntriples",
    "precision_recall",
    "quality_scores",
    "rank_ranges",
    "render_reports",
    "run_pipeline",
    "save_graph",
    "save_report",
    "serialize_ntriples",
    "split_reference",
    "trigram_dice",
    "total_score",
    "valid_for_datatype",
    "weight_grid",
]

#!/usr/bin/env python3
"""Regenerate the committed fixtures under fixtures/.

The seed fixture is fully determined by the generator seed and the
triple target; this script asserts the exact statistics the test suite
pins before writing anything.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from kgie.nt import save_graph
from kgie.ontology import load_ontology
from kgie.stats import graph_stats
from kgie.synth import MOVIE_FORMAT_PATTERNS, build_reference, movie_ontology_graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

SEED_FILMS = 250
SEED_PERSONS = 2200
SEED_COMPANIES = 343
SEED_RNG = 11
SEED_TRIPLES = 16_417


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)

    ontology_graph = movie_ontology_graph()
    ontology = load_ontology(ontology_graph, MOVIE_FORMAT_PATTERNS)
    assert not ontology.warnings, ontology.warnings
    save_graph(ontology_graph, FIXTURES / "movie_ontology.nt")
    (FIXTURES / "movie_ontology.formats.json").write_text(
        json.dumps(MOVIE_FORMAT_PATTERNS, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    seed = build_reference(
        SEED_FILMS,
        SEED_PERSONS,
        SEED_COMPANIES,
        rng_seed=SEED_RNG,
        triple_target=SEED_TRIPLES,
    )
    stats = graph_stats(seed)
    assert stats.fact_count == SEED_TRIPLES, stats
    assert stats.entity_count == SEED_FILMS + SEED_PERSONS + SEED_COMPANIES == 2793, stats
    assert stats.type_count == 3, stats
    assert stats.relation_count_incl_type == 25, stats
    assert stats.untyped_count == 0, stats
    save_graph(seed, FIXTURES / "seed_1k.nt")

    print(
        f"seed_1k.nt: facts={stats.fact_count} entities={stats.entity_count} "
        f"types={stats.type_count} relations_incl_type={stats.relation_count_incl_type}"
    )


if __name__ == "__main__":
    main()

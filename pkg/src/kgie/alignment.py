"""Entity alignment and triple matching between a produced and a reference graph.

An alignment is a scored many-to-many relation over entity IRIs.  Three
strategies are supported:

``exact-iri``
    Pairs every IRI present in both entity sets with itself.
``gold-provenance``
    Uses the namespace-shading prefixes recorded by the benchmark
    generator to map source-shaded IRIs back to reference IRIs, plus
    identity for unshaded IRIs that exist in the reference.
``label-similarity``
    Compares normalized labels with a character-trigram Dice score after a
    type-compatibility prefilter (pairs whose declared types are disjoint
    are never considered).
"""

from __future__ import annotations

import math
import re
import unicodedata
from dataclasses import dataclass, field
from datetime import datetime

from .ontology import Ontology, closed_type_map
from .rdf import (
    RDFS_LABEL,
    SKOS_ALT_LABEL,
    Graph,
    Iri,
    Literal,
    Term,
    Triple,
)

EXACT_IRI = "exact-iri"
GOLD_PROVENANCE = "gold-provenance"
LABEL_SIMILARITY = "label-similarity"

_QUOTES = '"\'“”‘’«»'
_TRAILING_PAREN = re.compile(r"\s*\([^()]*\)\s*$")


def normalize_label(text: str) -> str:
    """Normalize a label for comparison.

    Applies Unicode NFKC, strips surrounding quotes and trailing
    parenthesized disambiguators such as ``(film)``, lowercases, and
    collapses internal whitespace.
    """
    s = unicodedata.normalize("NFKC", text).strip()
    while len(s) >= 2 and s[0] in _QUOTES and s[-1] in _QUOTES:
        s = s[1:-1].strip()
    while True:
        stripped = _TRAILING_PAREN.sub("", s)
        if stripped == s:
            break
        s = stripped
    return " ".join(s.lower().split())


def trigrams(text: str) -> frozenset[str]:
    """Distinct contiguous three-character substrings."""
    return frozenset(text[i : i + 3] for i in range(len(text) - 2))


def trigram_dice(a: str, b: str) -> float:
    """Dice coefficient over distinct character trigrams; equal strings score 1."""
    if a == b:
        return 1.0
    ta, tb = trigrams(a), trigrams(b)
    if not ta and not tb:
        return 0.0
    return 2.0 * len(ta & tb) / (len(ta) + len(tb))


@dataclass(frozen=True)
class AlignmentConfig:
    """Knobs for alignment and literal equivalence."""

    strategy: str = LABEL_SIMILARITY
    label_threshold: float = 0.9
    use_alt_labels: bool = True
    numeric_rel_tolerance: float = 1e-9
    date_formats: tuple[str, ...] = ("%Y-%m-%d", "%d.%m.%Y", "%Y")


def literal_equivalent(a: Literal, b: Literal, cfg: AlignmentConfig) -> bool:
    """Value-level literal equivalence.

    True when any branch holds: exact equality, normalized string
    equality, numeric closeness within the relative tolerance, or equal
    dates under the configured formats (compared at equal granularity).
    The relation is reflexive and symmetric but not transitive across
    branches.
    """
    if a == b:
        return True
    if normalize_label(a.lexical) == normalize_label(b.lexical):
        return True
    try:
        va, vb = float(a.lexical), float(b.lexical)
    except ValueError:
        pass
    else:
        if math.isclose(va, vb, rel_tol=cfg.numeric_rel_tolerance, abs_tol=0.0):
            return True
    da = _parse_date(a.lexical, cfg.date_formats)
    db = _parse_date(b.lexical, cfg.date_formats)
    return da is not None and da == db


def _parse_date(lexical: str, formats: tuple[str, ...]) -> tuple | None:
    """First matching format wins; the result carries its granularity."""
    text = lexical.strip()
    for fmt in formats:
        try:
            parsed = datetime.strptime(text, fmt)
        except ValueError:
            continue
        has_month = "%m" in fmt or "%b" in fmt or "%B" in fmt
        has_day = "%d" in fmt
        return (
            parsed.year,
            parsed.month if has_month else None,
            parsed.day if has_day else None,
        )
    return None


@dataclass(frozen=True, slots=True)
class AlignedPair:
    produced: Iri
    reference: Iri
    score: float
    provenance: str


class AlignmentRelation:
    """Scored many-to-many relation between produced and reference entities."""

    def __init__(self, pairs: "list[AlignedPair] | set[AlignedPair]" = (), diagnostics: list[str] | None = None) -> None:
        self.pairs: frozenset[AlignedPair] = frozenset(pairs)
        self.diagnostics: list[str] = list(diagnostics or [])
        self._by_produced: dict[Iri, set[Iri]] = {}
        self._by_reference: dict[Iri, set[Iri]] = {}
        for p in self.pairs:
            self._by_produced.setdefault(p.produced, set()).add(p.reference)
            self._by_reference.setdefault(p.reference, set()).add(p.produced)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def contains(self, produced: Iri, reference: Iri) -> bool:
        return reference in self._by_produced.get(produced, ())

    def references_for(self, produced: Iri) -> set[Iri]:
        return self._by_produced.get(produced, set())

    def produced_for(self, reference: Iri) -> set[Iri]:
        return self._by_reference.get(reference, set())

    def aligned_produced(self) -> set[Iri]:
        return set(self._by_produced)

    def aligned_references(self) -> set[Iri]:
        return set(self._by_reference)


def entity_labels(graph: Graph, entity: Iri, cfg: AlignmentConfig) -> list[str]:
    """Label lexical forms of an entity (rdfs:label, optionally skos:altLabel)."""
    wanted = {RDFS_LABEL}
    if cfg.use_alt_labels:
        wanted.add(SKOS_ALT_LABEL)
    return [
        t.object.lexical
        for t in graph
        if t.subject == entity and t.predicate in wanted and isinstance(t.object, Literal)
    ]


def align_entities(
    produced: Graph,
    reference: Graph,
    ontology: Ontology,
    cfg: AlignmentConfig,
    unshade_prefixes: dict[str, str] | None = None,
) -> AlignmentRelation:
    """Align produced entities with reference entities under ``cfg.strategy``.

    ``unshade_prefixes`` maps shaded IRI prefixes back to reference
    prefixes and is required for the gold-provenance strategy.
    """
    produced_entities = produced.entities()
    reference_entities = reference.entities()

    if cfg.strategy == EXACT_IRI:
        pairs = [
            AlignedPair(e, e, 1.0, EXACT_IRI)
            for e in produced_entities & reference_entities
        ]
        return AlignmentRelation(pairs)

    if cfg.strategy == GOLD_PROVENANCE:
        if unshade_prefixes is None:
            raise ValueError("gold-provenance alignment requires shading prefixes")
        pairs = []
        for e in produced_entities:
            original = _unshade(e, unshade_prefixes)
            if original is not None and original in reference_entities:
                pairs.append(AlignedPair(e, original, 1.0, GOLD_PROVENANCE))
            elif e in reference_entities:
                pairs.append(AlignedPair(e, e, 1.0, GOLD_PROVENANCE))
        return AlignmentRelation(pairs)

    if cfg.strategy == LABEL_SIMILARITY:
        return _align_by_labels(produced, reference, ontology, cfg)

    raise ValueError(f"unknown alignment strategy: {cfg.strategy}")


def _unshade(iri: Iri, unshade_prefixes: dict[str, str]) -> Iri | None:
    # Longest matching prefix wins, mirroring how shading was applied.
    match = max(
        (p for p in unshade_prefixes if iri.value.startswith(p)), key=len, default=None
    )
    if match is None:
        return None
    return Iri(unshade_prefixes[match] + iri.value[len(match) :])


def _align_by_labels(
    produced: Graph,
    reference: Graph,
    ontology: Ontology,
    cfg: AlignmentConfig,
) -> AlignmentRelation:
    diagnostics: list[str] = []
    produced_labels = _normalized_label_map(produced, cfg, diagnostics, "produced")
    reference_labels = _normalized_label_map(reference, cfg, diagnostics, "reference")

    produced_types = closed_type_map(produced, ontology)
    reference_types = closed_type_map(reference, ontology)

    # Candidate generation: entities sharing a trigram or an exact label.
    by_exact: dict[str, set[Iri]] = {}
    by_trigram: dict[str, set[Iri]] = {}
    for r, labels in reference_labels.items():
        for label in labels:
            by_exact.setdefault(label, set()).add(r)
            for gram in trigrams(label):
                by_trigram.setdefault(gram, set()).add(r)

    pairs: list[AlignedPair] = []
    if cfg.label_threshold <= 0.0:
        candidates_for = lambda label: set(reference_labels)
    else:
        def candidates_for(label: str) -> set[Iri]:
            found = set(by_exact.get(label, ()))
            for gram in trigrams(label):
                found |= by_trigram.get(gram, set())
            return found

    for e in sorted(produced_labels, key=lambda i: i.value):
        candidates: set[Iri] = set()
        for label in produced_labels[e]:
            candidates |= candidates_for(label)
        for r in sorted(candidates, key=lambda i: i.value):
            if _types_disjoint(
                produced_types.get(e, set()), reference_types.get(r, set()), ontology
            ):
                continue
            score = max(
                trigram_dice(le, lr)
                for le in produced_labels[e]
                for lr in reference_labels[r]
            )
            if score >= cfg.label_threshold:
                pairs.append(AlignedPair(e, r, score, "label"))
    return AlignmentRelation(pairs, diagnostics)


def _normalized_label_map(
    graph: Graph, cfg: AlignmentConfig, diagnostics: list[str], side: str
) -> dict[Iri, list[str]]:
    wanted = {RDFS_LABEL, SKOS_ALT_LABEL} if cfg.use_alt_labels else {RDFS_LABEL}
    raw: dict[Iri, set[str]] = {}
    for t in graph:
        if t.predicate in wanted and isinstance(t.object, Literal):
            raw.setdefault(t.subject, set()).add(t.object.lexical)
    labels: dict[Iri, list[str]] = {}
    for e in sorted(graph.entities(), key=lambda i: i.value):
        normalized = sorted({normalize_label(x) for x in raw.get(e, ())} - {""})
        if normalized:
            labels[e] = normalized
        else:
            diagnostics.append(f"{side} entity without label: {e.value}")
    return labels


def _types_disjoint(a: set[Iri], b: set[Iri], ontology: Ontology) -> bool:
    return any(ontology.disjoint(ca, cb) for ca in a for cb in b)


@dataclass(frozen=True)
class MatchedSets:
    """Triples of each side that found at least one match on the other."""

    produced: frozenset[Triple]
    reference: frozenset[Triple]


def match_triple(
    produced_triple: Triple,
    reference_triple: Triple,
    alignment: AlignmentRelation,
    cfg: AlignmentConfig,
    ontology: Ontology | None = None,
) -> bool:
    """Triple match: aligned subjects, same canonical predicate, compatible objects."""
    if not alignment.contains(produced_triple.subject, reference_triple.subject):
        return False
    if _canonical(produced_triple.predicate, ontology) != _canonical(
        reference_triple.predicate, ontology
    ):
        return False
    return _objects_match(produced_triple.object, reference_triple.object, alignment, cfg)


def _canonical(p: Iri, ontology: Ontology | None) -> Iri:
    return ontology.canonical_predicate(p) if ontology is not None else p


def _objects_match(
    o_produced: Term, o_reference: Term, alignment: AlignmentRelation, cfg: AlignmentConfig
) -> bool:
    if isinstance(o_produced, Iri) and isinstance(o_reference, Iri):
        return o_produced == o_reference or alignment.contains(o_produced, o_reference)
    if isinstance(o_produced, Literal) and isinstance(o_reference, Literal):
        return literal_equivalent(o_produced, o_reference, cfg)
    return False


def matched_sets(
    produced: Graph,
    reference: Graph,
    alignment: AlignmentRelation,
    cfg: AlignmentConfig,
    ontology: Ontology | None = None,
) -> MatchedSets:
    """Compute both matched triple sets with predicate-grouped indexing.

    Equivalent to testing every produced/reference pair with
    :func:`match_triple`, but candidate reference triples are looked up by
    (canonical predicate, aligned subject) instead of scanned.
    """
    ref_index: dict[tuple[Iri, Iri], list[Triple]] = {}
    for rt in reference:
        key = (_canonical(rt.predicate, ontology), rt.subject)
        ref_index.setdefault(key, []).append(rt)

    matched_produced: set[Triple] = set()
    matched_reference: set[Triple] = set()
    for pt in produced:
        canon_pred = _canonical(pt.predicate, ontology)
        for ref_subject in alignment.references_for(pt.subject):
            for rt in ref_index.get((canon_pred, ref_subject), ()):
                if _objects_match(pt.object, rt.object, alignment, cfg):
                    matched_produced.add(pt)
                    matched_reference.add(rt)
    return MatchedSets(frozenset(matched_produced), frozenset(matched_reference))


def dump_alignment_tsv(alignment: AlignmentRelation) -> str:
    """Sorted TSV rows: produced, reference, score, provenance."""
    lines = sorted(
        f"{p.produced.value}\t{p.reference.value}\t{p.score:.6f}\t{p.provenance}"
        for p in alignment.pairs
    )
    return "".join(line + "\n" for line in lines)


def parse_alignment_tsv(text: str) -> AlignmentRelation:
    pairs = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ValueError(f"alignment TSV line {line_no}: expected 4 columns")
        pairs.append(AlignedPair(Iri(parts[0]), Iri(parts[1]), float(parts[2]), parts[3]))
    return AlignmentRelation(pairs)

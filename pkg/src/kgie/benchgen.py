"""Benchmark generation from a reference knowledge graph.

A reference graph is partitioned by its root-class entities into a seed
plus k source splits with a controlled fraction of deliberately
overlapping roots.  Each split carries the full subgraph of its roots:
every triple of the root itself plus label, type, and attribute triples
of the entities it links to (one hop; relations between non-root
entities are not followed).

Source splits are "shaded" by rewriting entity IRI prefixes, so that a
pipeline cannot merge entities by IRI equality while ground truth retains
the provenance of every entity.  Alongside the artifacts, the generator
writes expected entity matches, verified per-source entity lists, and a
manifest recording formats, shading, and the earliest stage at which each
reference entity appears.

All outputs are byte-identical across runs for the same inputs and seed;
randomness comes only from the SplitMix64 generator.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .nt import save_graph
from .ontology import Ontology, asserted_type_map, closed_type_map
from .rdf import RDF_TYPE, RDFS_LABEL, Graph, Iri, Literal, Triple
from .rng import SplitMix64

RDF_FORMAT = "rdf"
JSON_FORMAT = "json"
TEXT_FORMAT = "text"
_FORMATS = (RDF_FORMAT, JSON_FORMAT, TEXT_FORMAT)


@dataclass(frozen=True)
class SplitConfig:
    """Parameters of a benchmark generation run.

    ``num_splits`` counts the seed plus the sources.  For each ordered
    pair of splits i < j, a ``overlap_fraction`` share of split i's roots
    is copied into split j, so every pair of artifacts shares entities.
    ``namespace`` is the entity IRI prefix to shade per source; explicit
    per-source prefix maps can be given via ``shading`` instead.
    """

    num_splits: int
    root_class: Iri
    overlap_fraction: float = 0.05
    rng_seed: int = 0
    namespace: str | None = None
    shading: tuple[dict[str, str], ...] | None = None
    source_formats: tuple[str, ...] | None = None
    abstract_property: Iri | None = None


@dataclass
class SplitResult:
    split_graphs: list[Graph]
    split_roots: list[list[Iri]]
    stage_entities: list[set[Iri]]
    warnings: list[str] = field(default_factory=list)


def _shade_suffix(namespace: str, index: int) -> str:
    if namespace and namespace[-1] in "/#":
        return f"{namespace[:-1]}-s{index}{namespace[-1]}"
    return f"{namespace}-s{index}"


def source_shading_maps(cfg: SplitConfig) -> list[dict[str, str]]:
    """One prefix map per source; validates against conflicts."""
    k = cfg.num_splits - 1
    if cfg.shading is not None:
        maps = [dict(m) for m in cfg.shading]
        if len(maps) != k:
            raise ValueError(f"need {k} shading maps, got {len(maps)}")
    elif cfg.namespace is not None:
        maps = [{cfg.namespace: _shade_suffix(cfg.namespace, i)} for i in range(1, k + 1)]
    else:
        raise ValueError("either a namespace or explicit shading maps are required")
    seen: dict[str, int] = {}
    originals = {orig for m in maps for orig in m}
    for i, m in enumerate(maps, start=1):
        for orig, shaded in m.items():
            if shaded == orig or shaded in originals or shaded in seen:
                raise ValueError(f"prefix conflict: {shaded!r} in source {i}")
            seen[shaded] = i
    return maps


def split_reference(reference: Graph, ontology: Ontology, cfg: SplitConfig) -> SplitResult:
    """Partition root entities into splits and collect their subgraphs."""
    if cfg.num_splits < 2:
        raise ValueError("need at least two splits (seed plus one source)")
    if not 0.0 <= cfg.overlap_fraction < 1.0 / (cfg.num_splits - 1):
        raise ValueError(
            f"overlap fraction {cfg.overlap_fraction} infeasible for {cfg.num_splits} splits"
        )
    root_class = ontology.canonical_class(cfg.root_class)
    closed_types = closed_type_map(reference, ontology)
    roots = sorted(
        (e for e, types in closed_types.items() if root_class in types),
        key=lambda i: i.value,
    )
    if not roots:
        raise ValueError(f"no instances of root class {cfg.root_class.value}")

    rng = SplitMix64(cfg.rng_seed)
    shuffled = list(roots)
    rng.shuffle(shuffled)

    k = cfg.num_splits
    base_size, extra = divmod(len(shuffled), k)
    bases: list[list[Iri]] = []
    cursor = 0
    for i in range(k):
        size = base_size + (1 if i < extra else 0)
        bases.append(shuffled[cursor : cursor + size])
        cursor += size

    # Copies from split i flow to every later split; the per-target
    # samples are drawn without replacement so pairwise overlaps are
    # exactly ceil(overlap_fraction * |base_i|).
    split_roots = [list(b) for b in bases]
    for i in range(k):
        per_target = math.ceil(cfg.overlap_fraction * len(bases[i]))
        targets = list(range(i + 1, k))
        if per_target * len(targets) > len(bases[i]):
            raise ValueError(
                f"overlap constraint infeasible: split {i} has {len(bases[i])} roots "
                f"but must donate {per_target * len(targets)}"
            )
        donors = list(bases[i])
        for j in targets:
            picked = rng.sample(donors, per_target)
            donors = [d for d in donors if d not in picked]
            split_roots[j].extend(picked)

    root_set = set(roots)
    by_subject: dict[Iri, list[Triple]] = {}
    for t in reference:
        by_subject.setdefault(t.subject, []).append(t)

    warnings: list[str] = []
    split_graphs: list[Graph] = []
    stage_entities: list[set[Iri]] = []
    skipped_root_links = 0
    skipped_member_links = 0
    for members in split_roots:
        member_set = set(members)
        g = Graph()
        linked: set[Iri] = set()
        for root in members:
            for t in by_subject.get(root, ()):
                is_relation = isinstance(t.object, Iri) and t.predicate != RDF_TYPE
                if is_relation and t.object in root_set and t.object not in member_set:
                    skipped_root_links += 1
                    continue
                g.add(t)
                if is_relation and t.object not in root_set:
                    linked.add(t.object)
        # Linked non-root entities contribute their label, type, and
        # attribute triples; their own relations are out of scope.
        for entity in linked:
            for t in by_subject.get(entity, ()):
                if isinstance(t.object, Iri) and t.predicate != RDF_TYPE:
                    skipped_member_links += 1
                    continue
                g.add(t)
        split_graphs.append(g)
        stage_entities.append(g.entities())
    if skipped_root_links:
        warnings.append(
            f"{skipped_root_links} root-to-root link(s) crossing split boundaries were left out"
        )
    if skipped_member_links:
        warnings.append(
            f"{skipped_member_links} relation(s) of linked entities were left out (one-hop bound)"
        )
    return SplitResult(split_graphs, split_roots, stage_entities, warnings)


def shade_namespaces(graph: Graph, prefix_map: dict[str, str]) -> tuple[Graph, dict[Iri, Iri]]:
    """Rewrite entity IRIs by prefix substitution.

    Longest matching prefix wins.  Predicates, class IRIs (objects of
    rdf:type), and literals stay untouched.  Returns the shaded graph and
    the full entity mapping, identity entries included.
    """
    ordered = sorted(prefix_map.items(), key=lambda kv: -len(kv[0]))

    def shade(iri: Iri) -> Iri:
        for original, shaded in ordered:
            if iri.value.startswith(original):
                return Iri(shaded + iri.value[len(original) :])
        return iri

    mapping = {e: shade(e) for e in graph.entities()}
    shaded_graph = Graph()
    for t in graph:
        obj = t.object
        if isinstance(obj, Iri) and t.predicate != RDF_TYPE:
            obj = mapping.get(obj, obj)
        shaded_graph.add(Triple(mapping.get(t.subject, t.subject), t.predicate, obj))
    if len(shaded_graph) != len(graph):
        raise ValueError("shading collapsed distinct triples; prefix map is not injective")
    return shaded_graph, mapping


def emit_json_records(
    graph: Graph, ontology: Ontology, root_class: Iri
) -> tuple[list[dict], list[str]]:
    """One JSON document per root entity.

    The root label becomes ``title``; linked entities nest one level deep
    with their label as ``name`` and their attributes inlined.  All
    literal values stay strings with their lexical form; multi-valued
    keys become sorted arrays.  Roots without a label get an ``id`` field
    and a warning.
    """
    warnings: list[str] = []
    closed_types = closed_type_map(graph, ontology)
    canon_root = ontology.canonical_class(root_class)
    roots = sorted(
        (e for e, types in closed_types.items() if canon_root in types),
        key=lambda i: i.value,
    )
    by_subject: dict[Iri, list[Triple]] = {}
    for t in graph:
        by_subject.setdefault(t.subject, []).append(t)

    def entity_doc(entity: Iri, label_key: str, nest: bool) -> dict:
        values: dict[str, list] = {}
        labels: list[str] = []
        for t in sorted(by_subject.get(entity, ()), key=lambda x: (x.predicate.value, str(x.object))):
            if t.predicate == RDF_TYPE:
                continue
            if t.predicate == RDFS_LABEL and isinstance(t.object, Literal):
                labels.append(t.object.lexical)
                continue
            key = t.predicate.local_name()
            if isinstance(t.object, Literal):
                values.setdefault(key, []).append(t.object.lexical)
            elif nest:
                values.setdefault(key, []).append(entity_doc(t.object, "name", nest=False))
        doc: dict = {}
        if labels:
            doc[label_key] = labels[0] if len(labels) == 1 else sorted(labels)
        else:
            doc["id"] = entity.value
            warnings.append(f"entity without label emitted with id: {entity.value}")
        for key in sorted(values):
            items = values[key]
            items = sorted(items, key=lambda v: json.dumps(v, sort_keys=True, ensure_ascii=False))
            doc[key] = items[0] if len(items) == 1 else items
        return doc

    return [entity_doc(root, "title", nest=True) for root in roots], warnings


def emit_text_documents(
    graph: Graph,
    ontology: Ontology,
    root_class: Iri,
    abstract_property: Iri | None,
) -> tuple[list[tuple[Iri, str]], list[str]]:
    """One text document per root, from the configured abstract property."""
    if abstract_property is None:
        raise ValueError("text emission requires an abstract property")
    warnings: list[str] = []
    closed_types = closed_type_map(graph, ontology)
    canon_root = ontology.canonical_class(root_class)
    docs: list[tuple[Iri, str]] = []
    for root in sorted(
        (e for e, types in closed_types.items() if canon_root in types),
        key=lambda i: i.value,
    ):
        texts = sorted(
            t.object.lexical
            for t in graph
            if t.subject == root
            and t.predicate == abstract_property
            and isinstance(t.object, Literal)
        )
        if texts:
            docs.append((root, "\n\n".join(texts)))
        else:
            warnings.append(f"root without abstract text skipped: {root.value}")
    return docs, warnings


@dataclass(frozen=True)
class SourceEntry:
    path: str
    format: str
    stage: int
    shading: dict[str, str]


@dataclass
class BenchmarkManifest:
    """Index of one generated benchmark; serializes to manifest.json."""

    ontology: str
    seed: str
    sources: list[SourceEntry]
    reference: str
    stages: list[tuple[int, list[str]]]
    expected_matches: str
    verified_entities: list[str]

    def to_json_dict(self) -> dict:
        return {
            "ontology": self.ontology,
            "seed": self.seed,
            "sources": [
                {"path": s.path, "format": s.format, "stage": s.stage, "shading": dict(s.shading)}
                for s in self.sources
            ],
            "reference": self.reference,
            "stages": [
                {"stage": stage, "entities": list(entities)} for stage, entities in self.stages
            ],
            "expected_matches": self.expected_matches,
            "verified_entities": list(self.verified_entities),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BenchmarkManifest":
        return cls(
            ontology=data["ontology"],
            seed=data["seed"],
            sources=[
                SourceEntry(
                    path=s["path"],
                    format=s["format"],
                    stage=int(s["stage"]),
                    shading=dict(s["shading"]),
                )
                for s in data["sources"]
            ],
            reference=data["reference"],
            stages=[(int(s["stage"]), list(s["entities"])) for s in data["stages"]],
            expected_matches=data["expected_matches"],
            verified_entities=list(data["verified_entities"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_json_dict(), indent=2, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: str | Path) -> "BenchmarkManifest":
        return cls.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def stage_entity_map(self) -> dict[int, set[Iri]]:
        return {stage: {Iri(e) for e in entities} for stage, entities in self.stages}

    def unshade_prefixes(self) -> dict[str, str]:
        """Shaded prefix back to original, merged over all sources."""
        out: dict[str, str] = {}
        for s in self.sources:
            for original, shaded in s.shading.items():
                out[shaded] = original
        return out

    def max_stage(self) -> int:
        return max((s.stage for s in self.sources), default=0)


def expected_match_rows(
    reference: Graph,
    ontology: Ontology,
    stage_entities: list[set[Iri]],
    entity_maps: list[dict[Iri, Iri]],
) -> list[tuple[str, str, str]]:
    """Ground-truth match records (type, id-in-earlier, id-in-later).

    One row per entity shared by a pair of artifacts, with the identifier
    each artifact uses for it (shaded for sources, plain for the seed).
    """
    types = asserted_type_map(reference, ontology)
    rows: list[tuple[str, str, str]] = []
    for i in range(len(stage_entities)):
        for j in range(i + 1, len(stage_entities)):
            for e in stage_entities[i] & stage_entities[j]:
                type_iri = min((c.value for c in types.get(e, ())), default="")
                id_i = entity_maps[i].get(e, e).value
                id_j = entity_maps[j].get(e, e).value
                rows.append((type_iri, id_i, id_j))
    return sorted(rows)


def generate_benchmark(
    reference: Graph,
    ontology_graph: Graph,
    ontology: Ontology,
    cfg: SplitConfig,
    out_dir: str | Path,
    formats_sidecar: dict[str, str] | None = None,
) -> BenchmarkManifest:
    """Split, shade, and write one complete benchmark into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    shading_maps = source_shading_maps(cfg)
    source_formats = cfg.source_formats or tuple(RDF_FORMAT for _ in shading_maps)
    if len(source_formats) != cfg.num_splits - 1:
        raise ValueError("one source format per source is required")
    unknown = sorted(set(source_formats) - set(_FORMATS))
    if unknown:
        raise ValueError(f"unknown source format(s): {', '.join(unknown)}")

    result = split_reference(reference, ontology, cfg)

    save_graph(ontology_graph, out / "ontology.nt")
    if formats_sidecar is not None:
        (out / "ontology.formats.json").write_text(
            json.dumps(formats_sidecar, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    save_graph(reference, out / "reference.nt")
    save_graph(result.split_graphs[0], out / "seed.nt")

    sources: list[SourceEntry] = []
    entity_maps: list[dict[Iri, Iri]] = [{}]  # seed keeps reference IRIs
    verified_paths: list[str] = []
    for idx, prefix_map in enumerate(shading_maps, start=1):
        split_graph = result.split_graphs[idx]
        shaded, mapping = shade_namespaces(split_graph, prefix_map)
        entity_maps.append(mapping)
        fmt = source_formats[idx - 1]
        if fmt == RDF_FORMAT:
            path = f"source_{idx}.nt"
            save_graph(shaded, out / path)
        elif fmt == JSON_FORMAT:
            path = f"source_{idx}.json"
            records, warnings = emit_json_records(shaded, ontology, cfg.root_class)
            result.warnings.extend(warnings)
            (out / path).write_text(
                json.dumps(records, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
            )
        else:
            path = f"source_{idx}.txt"
            docs, warnings = emit_text_documents(
                shaded, ontology, cfg.root_class, cfg.abstract_property
            )
            result.warnings.extend(warnings)
            blocks = [f"# {iri.value}\n{text}\n" for iri, text in docs]
            (out / path).write_text("\n".join(blocks), encoding="utf-8")
        sources.append(SourceEntry(path=path, format=fmt, stage=idx, shading=prefix_map))

        verified = f"verified_source_{idx}.txt"
        shaded_entities = sorted(mapping[e].value for e in result.stage_entities[idx])
        (out / verified).write_text("".join(v + "\n" for v in shaded_entities), encoding="utf-8")
        verified_paths.append(verified)

    match_rows = expected_match_rows(reference, ontology, result.stage_entities, entity_maps)
    (out / "expected_matches.tsv").write_text(
        "".join(f"{t}\t{a}\t{b}\n" for t, a, b in match_rows), encoding="utf-8"
    )

    seen: set[Iri] = set()
    stages: list[tuple[int, list[str]]] = []
    for stage_no, entities in enumerate(result.stage_entities):
        fresh = sorted(e.value for e in entities - seen)
        seen |= entities
        stages.append((stage_no, fresh))

    manifest = BenchmarkManifest(
        ontology="ontology.nt",
        seed="seed.nt",
        sources=sources,
        reference="reference.nt",
        stages=stages,
        expected_matches="expected_matches.tsv",
        verified_entities=verified_paths,
    )
    manifest.save(out / "manifest.json")
    return manifest

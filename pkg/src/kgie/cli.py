"""Command-line interface: generate, pipeline, evaluate, validate, rank, render.

Exit codes: 0 success, 1 data errors (unparseable graphs, invalid
ontology, undefined scores where values are required), 2 usage errors
and manifest/stage mismatches.  Diagnostics go to standard error.  Every
command is reproducible: the same inputs and flags yield byte-identical
outputs (durations enter reports only when imported from a run log,
which is itself an input).
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Sequence

import click

from . import __version__
from .alignment import (
    EXACT_IRI,
    GOLD_PROVENANCE,
    LABEL_SIMILARITY,
    AlignmentConfig,
    align_entities,
)
from .benchgen import BenchmarkManifest, SplitConfig, generate_benchmark, shade_namespaces
from .consistency import Finding, consistency_report
from .metrics import build_scope, quality_scores
from .nt import load_graph, render_triple, save_graph
from .ontology import Ontology, load_ontology
from .pipeline import PipelineConfig, run_pipeline
from .ranking import GroupScores, harmonic_mean, rank_ranges, weight_grid
from .rdf import Graph, OntologyError, ParseError
from .report import (
    SCHEMA_VERSION,
    build_report,
    load_report,
    render_reports,
    save_report,
)
from .stats import graph_stats
from .synth import ABSTRACT, ENTITY_NS, FILM, MOVIE_FORMAT_PATTERNS, build_reference, movie_ontology_graph

_ALIGNMENT_CHOICES = {
    "gold": GOLD_PROVENANCE,
    "exact-iri": EXACT_IRI,
    "label": LABEL_SIMILARITY,
}


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_graph_checked(path: Path, field: str) -> Graph:
    if not path.is_file():
        _fail(2, f"{field}: file not found: {path}")
    try:
        return load_graph(path)
    except ParseError as exc:
        _fail(1, f"{field}: {path}: {exc}")
    raise AssertionError("unreachable")


def _load_ontology_checked(path: Path, field: str = "ontology") -> tuple[Graph, Ontology]:
    graph = _load_graph_checked(path, field)
    formats: dict[str, str] | None = None
    sidecar = path.with_suffix(".formats.json")
    if sidecar.is_file():
        try:
            formats = json.loads(sidecar.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            _fail(1, f"{sidecar}: {exc}")
    try:
        return graph, load_ontology(graph, formats)
    except OntologyError as exc:
        _fail(1, f"{field}: {path}: {exc}")
    raise AssertionError("unreachable")


def _thread_cap(task_count: int) -> int:
    limit = os.cpu_count() or 1
    env = os.environ.get("KGIE_THREADS")
    if env:
        try:
            limit = min(limit, max(1, int(env)))
        except ValueError:
            _fail(2, f"KGIE_THREADS must be an integer, got {env!r}")
    return max(1, min(task_count, limit))


@click.group()
@click.version_option(version=__version__, prog_name="kgie")
def main() -> None:
    """Evaluate knowledge-graph integration pipelines."""


@main.command()
@click.option("--films", type=int, default=100, show_default=True, help="Root film count of the synthetic reference.")
@click.option("--persons", type=int, default=None, help="Person pool size (default scales with films).")
@click.option("--companies", type=int, default=None, help="Company pool size (default scales with films).")
@click.option("--splits", type=int, default=4, show_default=True, help="Number of splits (seed + sources).")
@click.option("--overlap", type=float, default=0.05, show_default=True, help="Pairwise root overlap fraction.")
@click.option("--rng-seed", type=int, default=0, show_default=True, help="Seed of the portable generator.")
@click.option("--formats", default=None, help="Comma-separated source formats (rdf, json, text); default all rdf.")
@click.option("--triple-target", type=int, default=None, help="Exact reference triple count to top up to.")
@click.option("--out-dir", type=click.Path(path_type=Path), required=True)
def generate(
    films: int,
    persons: int | None,
    companies: int | None,
    splits: int,
    overlap: float,
    rng_seed: int,
    formats: str | None,
    triple_target: int | None,
    out_dir: Path,
) -> None:
    """Generate a synthetic movie benchmark into OUT-DIR."""
    source_formats = None
    if formats is not None:
        source_formats = tuple(f.strip() for f in formats.split(","))
    ontology_graph = movie_ontology_graph()
    try:
        ontology = load_ontology(ontology_graph, MOVIE_FORMAT_PATTERNS)
        reference = build_reference(
            films, persons, companies, rng_seed=rng_seed, triple_target=triple_target
        )
        cfg = SplitConfig(
            num_splits=splits,
            root_class=FILM,
            overlap_fraction=overlap,
            rng_seed=rng_seed,
            namespace=ENTITY_NS,
            source_formats=source_formats,
            abstract_property=ABSTRACT,
        )
        manifest = generate_benchmark(
            reference,
            ontology_graph,
            ontology,
            cfg,
            out_dir,
            formats_sidecar=MOVIE_FORMAT_PATTERNS,
        )
    except (OntologyError, ValueError) as exc:
        _fail(2, str(exc))
        return
    click.echo(f"wrote benchmark with {len(manifest.sources)} sources to {out_dir}")


@main.command()
@click.option("--seed", "seed_path", type=click.Path(path_type=Path), required=True)
@click.option("--source", "source_paths", type=click.Path(path_type=Path), multiple=True, required=True)
@click.option("--ontology", "ontology_path", type=click.Path(path_type=Path), required=True)
@click.option("--threshold", type=float, default=0.95, show_default=True, help="Entity-resolution similarity threshold.")
@click.option("--prefer-source", is_flag=True, help="Let incoming source values win single-value conflicts.")
@click.option("--no-alt-labels", is_flag=True, help="Match on preferred labels only.")
@click.option("--out-dir", type=click.Path(path_type=Path), required=True)
def pipeline(
    seed_path: Path,
    source_paths: tuple[Path, ...],
    ontology_path: Path,
    threshold: float,
    prefer_source: bool,
    no_alt_labels: bool,
    out_dir: Path,
) -> None:
    """Integrate RDF sources into the seed, writing kg_1.nt .. kg_n.nt."""
    for p in source_paths:
        if p.suffix != ".nt":
            _fail(2, f"source: only RDF (.nt) sources are supported, got {p}")
    _, ontology = _load_ontology_checked(ontology_path)
    seed = _load_graph_checked(seed_path, "seed")
    sources = [_load_graph_checked(p, "source") for p in source_paths]
    cfg = PipelineConfig(
        resolve_threshold=threshold,
        use_alt_labels=not no_alt_labels,
        prefer_source=prefer_source,
    )
    graphs, logs = run_pipeline(seed, sources, ontology, cfg)
    out_dir.mkdir(parents=True, exist_ok=True)
    for stage, graph in enumerate(graphs, start=1):
        save_graph(graph, out_dir / f"kg_{stage}.nt")
    log_doc = {
        "tool_version": __version__,
        "config": {
            "resolve_threshold": cfg.resolve_threshold,
            "use_alt_labels": cfg.use_alt_labels,
            "prefer_source": cfg.prefer_source,
        },
        "stages": [
            {
                "stage": log.stage,
                "matched_entities": log.matched_entities,
                "imported_entities": log.imported_entities,
                "dropped_values": log.dropped_values,
                "type_conflicts": log.type_conflicts,
                "duration_s": log.duration_s,
            }
            for log in logs
        ],
    }
    (out_dir / "run_log.json").write_text(
        json.dumps(log_doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    click.echo(f"wrote {len(graphs)} integrated graphs to {out_dir}")


def _load_manifest(path: Path) -> BenchmarkManifest:
    if not path.is_file():
        _fail(2, f"manifest: file not found: {path}")
    try:
        return BenchmarkManifest.load(path)
    except json.JSONDecodeError as exc:
        _fail(1, f"manifest: {path}: {exc}")
    except (KeyError, TypeError, ValueError) as exc:
        _fail(2, f"manifest: {path}: missing or malformed field: {exc}")
    raise AssertionError("unreachable")


@main.command()
@click.option("--manifest", "manifest_path", type=click.Path(path_type=Path), required=True)
@click.option("--produced", "produced_paths", type=click.Path(path_type=Path), multiple=True, required=True, help="Integrated graph per stage, in stage order.")
@click.option("--stage", "stages", type=int, multiple=True, help="Explicit stage per produced graph (default 1..n).")
@click.option("--pipeline-id", default="pipeline", show_default=True)
@click.option("--alignment", type=click.Choice(sorted(_ALIGNMENT_CHOICES)), default="gold", show_default=True)
@click.option("--threshold", type=float, default=0.9, show_default=True, help="Label-similarity alignment threshold.")
@click.option("--no-alt-labels", is_flag=True, help="Match on preferred labels only.")
@click.option("--seed-exclusion", type=click.Choice(["gold", "matcher"]), default="gold", show_default=True)
@click.option("--source-coverage", is_flag=True, help="Also score stage-source coverage (RDF sources only).")
@click.option("--run-log", "run_log_path", type=click.Path(path_type=Path), default=None, help="Pipeline run log supplying per-stage durations.")
@click.option("--out-dir", type=click.Path(path_type=Path), required=True)
def evaluate(
    manifest_path: Path,
    produced_paths: tuple[Path, ...],
    stages: tuple[int, ...],
    pipeline_id: str,
    alignment: str,
    threshold: float,
    no_alt_labels: bool,
    seed_exclusion: str,
    source_coverage: bool,
    run_log_path: Path | None,
    out_dir: Path,
) -> None:
    """Evaluate produced graphs against a benchmark manifest."""
    if stages and len(stages) != len(produced_paths):
        _fail(2, f"got {len(produced_paths)} produced graphs but {len(stages)} --stage values")
    stage_list = list(stages) if stages else list(range(1, len(produced_paths) + 1))

    manifest = _load_manifest(manifest_path)
    base = manifest_path.parent
    _, ontology = _load_ontology_checked(base / manifest.ontology)
    seed = _load_graph_checked(base / manifest.seed, "seed")
    reference = _load_graph_checked(base / manifest.reference, "reference")
    stage_entities = manifest.stage_entity_map()
    unshade = manifest.unshade_prefixes()

    cfg = AlignmentConfig(
        strategy=_ALIGNMENT_CHOICES[alignment],
        label_threshold=threshold,
        use_alt_labels=not no_alt_labels,
    )

    durations: dict[int, float] = {}
    if run_log_path is not None:
        if not run_log_path.is_file():
            _fail(2, f"run-log: file not found: {run_log_path}")
        try:
            log_doc = json.loads(run_log_path.read_text(encoding="utf-8"))
            durations = {
                int(entry["stage"]): float(entry["duration_s"])
                for entry in log_doc.get("stages", [])
            }
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            _fail(1, f"run-log: {run_log_path}: {exc}")

    produced_graphs = [_load_graph_checked(p, "produced") for p in produced_paths]

    sources_by_stage: dict[int, Graph] = {}
    if source_coverage:
        for entry in manifest.sources:
            if entry.format != "rdf":
                click.echo(
                    f"note: skipping source coverage for non-RDF stage {entry.stage}", err=True
                )
                continue
            shaded = _load_graph_checked(base / entry.path, "source")
            try:
                unshaded, _ = shade_namespaces(shaded, {v: k for k, v in entry.shading.items()})
            except ValueError as exc:
                _fail(1, f"source: {entry.path}: {exc}")
                return
            sources_by_stage[entry.stage] = unshaded

    def evaluate_one(stage: int, produced: Graph) -> dict[str, Any]:
        produced_alignment = align_entities(
            produced, reference, ontology, cfg, unshade_prefixes=unshade or None
        )
        scope = build_scope(
            seed,
            produced,
            reference,
            stage_entities,
            stage,
            ontology=ontology,
            cfg=cfg,
            seed_matcher=seed_exclusion == "matcher",
        )
        source = sources_by_stage.get(stage)
        source_alignment = None
        if source is not None:
            source_alignment = align_entities(
                produced, source, ontology, cfg, unshade_prefixes=unshade or None
            )
        quality = quality_scores(
            scope,
            produced,
            reference,
            produced_alignment,
            cfg,
            ontology,
            source=source,
            source_alignment=source_alignment,
        )
        consistency = consistency_report(produced, ontology)
        return build_report(
            pipeline_id,
            stage,
            quality,
            consistency,
            stats=graph_stats(produced),
            duration_s=durations.get(stage),
            config={
                "strategy": alignment,
                "label_threshold": threshold,
                "use_alt_labels": not no_alt_labels,
                "seed_exclusion": scope.seed_exclusion,
                "tool_version": __version__,
            },
        )

    tasks = list(zip(stage_list, produced_graphs))
    try:
        workers = _thread_cap(len(tasks))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                reports = list(pool.map(lambda t: evaluate_one(*t), tasks))
        else:
            reports = [evaluate_one(stage, graph) for stage, graph in tasks]
    except ValueError as exc:
        _fail(2, str(exc))
        return

    out_dir.mkdir(parents=True, exist_ok=True)
    for stage, rep in zip(stage_list, reports):
        save_report(rep, out_dir / f"report_stage_{stage}.json")
    click.echo(f"wrote {len(reports)} report(s) to {out_dir}")


def _finding_dict(finding: Finding) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "kind": finding.kind,
        "subject": finding.subject.value,
        "detail": finding.detail,
    }
    if finding.triple is not None:
        doc["triple"] = render_triple(finding.triple)
    return doc


@main.command()
@click.option("--graph", "graph_path", type=click.Path(path_type=Path), required=True)
@click.option("--ontology", "ontology_path", type=click.Path(path_type=Path), required=True)
@click.option("--findings", "with_findings", is_flag=True, help="Include one record per violating triple.")
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None)
def validate(
    graph_path: Path, ontology_path: Path, with_findings: bool, out_path: Path | None
) -> None:
    """Check a graph against the ontology; emit the six violation ratios."""
    _, ontology = _load_ontology_checked(ontology_path)
    graph = _load_graph_checked(graph_path, "graph")
    report = consistency_report(graph, ontology)
    doc: dict[str, Any] = {
        "ratios": report.ratios,
        "compliance": report.compliance,
        "warnings": report.warnings,
    }
    if with_findings:
        doc["findings"] = [_finding_dict(f) for f in report.findings]
        doc["cardinality_findings"] = [_finding_dict(f) for f in report.cardinality_findings]
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if out_path is None:
        click.echo(text, nl=False)
    else:
        out_path.write_text(text, encoding="utf-8")


def _load_reports(paths: Sequence[Path]) -> list[dict[str, Any]]:
    reports = []
    for p in paths:
        if not p.is_file():
            _fail(2, f"report: file not found: {p}")
        try:
            reports.append(load_report(p))
        except (json.JSONDecodeError, ValueError) as exc:
            _fail(1, str(exc))
    return reports


@main.command()
@click.argument("reports", type=click.Path(path_type=Path), nargs=-1, required=True)
@click.option("--step", default="0.1", show_default=True, help="Weight grid step (a fraction of 1).")
@click.option("--quantize", is_flag=True, help="Round group scores to 3 decimals before ranking.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None)
def rank(
    reports: tuple[Path, ...],
    step: str,
    quantize: bool,
    fmt: str,
    out_path: Path | None,
) -> None:
    """Rank pipelines by weighted group scores over an exhaustive grid."""
    docs = _load_reports(reports)
    rows: dict[str, GroupScores] = {}
    for doc in docs:
        pid = str(doc.get("pipeline", ""))
        if pid in rows:
            _fail(2, f"duplicate pipeline id {pid!r}; rank one report per pipeline")
        groups = doc.get("groups", {})
        scores = GroupScores(
            coverage=groups.get("coverage"),
            correctness=groups.get("correctness"),
            consistency=groups.get("consistency"),
        )
        if quantize:
            scores = GroupScores(
                coverage=None if scores.coverage is None else round(scores.coverage, 3),
                correctness=None if scores.correctness is None else round(scores.correctness, 3),
                consistency=None if scores.consistency is None else round(scores.consistency, 3),
            )
        rows[pid] = scores
    try:
        grid = weight_grid(3, step)
        triples = {pid: s.as_tuple() for pid, s in rows.items()}
        ranges = rank_ranges(triples, grid)
    except ValueError as exc:
        _fail(1, str(exc))
        return
    table = []
    for pid in sorted(rows):
        cov, corr, cons = triples[pid]
        r_min, r_max = ranges[pid]
        table.append(
            {
                "pipeline": pid,
                "cov": round(cov, 3),
                "corr": round(corr, 3),
                "cons": round(cons, 3),
                "h_mean": round(harmonic_mean([cov, corr, cons]), 3),
                "rank_min": r_min,
                "rank_max": r_max,
            }
        )
    if fmt == "json":
        text = json.dumps(table, indent=2, ensure_ascii=False) + "\n"
    else:
        lines = ["pipeline,cov,corr,cons,h_mean,rank_min,rank_max"]
        lines.extend(
            f"{r['pipeline']},{r['cov']:.3f},{r['corr']:.3f},{r['cons']:.3f},"
            f"{r['h_mean']:.3f},{r['rank_min']},{r['rank_max']}"
            for r in table
        )
        text = "\n".join(lines) + "\n"
    if out_path is None:
        click.echo(text, nl=False)
    else:
        out_path.write_text(text, encoding="utf-8")


@main.command()
@click.argument("reports", type=click.Path(path_type=Path), nargs=-1, required=True)
@click.option("--format", "fmt", type=click.Choice(["table", "csv", "json"]), default="table", show_default=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None)
def render(reports: tuple[Path, ...], fmt: str, out_path: Path | None) -> None:
    """Render evaluation reports as a metric table."""
    docs = _load_reports(reports)
    try:
        text = render_reports(docs, fmt)
    except ValueError as exc:
        _fail(1, str(exc))
        return
    if out_path is None:
        click.echo(text, nl=False)
    else:
        out_path.write_text(text, encoding="utf-8")


if __name__ == "__main__":
    main()

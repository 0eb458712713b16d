"""Ontology-conformance checks over a produced graph.

Six violation ratios are computed: disjoint typing of entities, domain
and range conflicts, inverted relation direction, and datatype and format
failures of literal values.  Each ratio has a compliance counterpart
``1 - ratio``.  Checks only fire on declared knowledge: untyped endpoints
and undeclared properties never violate anything.

Max-cardinality excesses are reported as findings only; they feed the
fusion step of the baseline pipeline, not the ratios.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .ontology import ATTRIBUTE, Ontology, asserted_type_map
from .rdf import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DATE,
    XSD_DOUBLE,
    XSD_GYEAR,
    XSD_INTEGER,
    XSD_STRING,
    Graph,
    Iri,
    Literal,
    Triple,
)

_INTEGER_RE = re.compile(r"[+-]?[0-9]+")
_DOUBLE_RE = re.compile(r"(?:[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?|[+-]?INF|NaN)")
_DATE_RE = re.compile(r"(-?[0-9]{4,})-([0-9]{2})-([0-9]{2})(?:Z|[+-][0-9]{2}:[0-9]{2})?")
_GYEAR_RE = re.compile(r"-?[0-9]{4,}(?:Z|[+-][0-9]{2}:[0-9]{2})?")
_BOOLEAN_RE = re.compile(r"true|false|1|0")

_DAYS_IN_MONTH = {1: 31, 2: 28, 3: 31, 4: 30, 5: 31, 6: 30, 7: 31, 8: 31, 9: 30, 10: 31, 11: 30, 12: 31}


def _valid_date(lexical: str) -> bool:
    m = _DATE_RE.fullmatch(lexical)
    if not m:
        return False
    year, month, day = int(m.group(1)), int(m.group(2)), int(m.group(3))
    if not 1 <= month <= 12:
        return False
    days = _DAYS_IN_MONTH[month]
    if month == 2 and year % 4 == 0 and (year % 100 != 0 or year % 400 == 0):
        days = 29
    return 1 <= day <= days


_VALIDATORS = {
    XSD_STRING: lambda lexical: True,
    XSD_INTEGER: lambda lexical: _INTEGER_RE.fullmatch(lexical) is not None,
    XSD_DOUBLE: lambda lexical: _DOUBLE_RE.fullmatch(lexical) is not None,
    XSD_DATE: _valid_date,
    XSD_GYEAR: lambda lexical: _GYEAR_RE.fullmatch(lexical) is not None,
    XSD_BOOLEAN: lambda lexical: _BOOLEAN_RE.fullmatch(lexical) is not None,
}


def valid_for_datatype(lexical: str, datatype: Iri) -> bool | None:
    """Whether a lexical form parses under an XSD datatype.

    Returns ``None`` for datatypes without a validator; callers should
    treat that as valid and surface a warning.
    """
    validator = _VALIDATORS.get(datatype)
    if validator is None:
        return None
    return validator(lexical)


@dataclass(frozen=True)
class Finding:
    """One concrete violation, anchored to a triple or entity."""

    kind: str
    subject: Iri
    detail: str
    triple: Triple | None = None


@dataclass
class ConsistencyReport:
    """Violation ratios, their compliance complements, and findings."""

    ratios: dict[str, float | None]
    findings: list[Finding] = field(default_factory=list)
    cardinality_findings: list[Finding] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def compliance(self) -> dict[str, float | None]:
        return {k: (None if v is None else 1.0 - v) for k, v in self.ratios.items()}


RATIO_KEYS = (
    "disjoint_types",
    "domain",
    "range",
    "direction",
    "literal_datatype",
    "literal_format",
)


def disjointness_violations(graph: Graph, ontology: Ontology) -> tuple[float | None, list[Finding]]:
    """Entities whose (upward-closed) types include a declared disjoint pair."""
    entities = graph.entities()
    if not entities:
        return None, []
    types = asserted_type_map(graph, ontology)
    findings = []
    for e in sorted(entities, key=lambda i: i.value):
        asserted = sorted(types.get(e, ()), key=lambda i: i.value)
        hit = next(
            (
                (a, b)
                for i, a in enumerate(asserted)
                for b in asserted[i + 1 :]
                if ontology.disjoint(a, b)
            ),
            None,
        )
        if hit:
            findings.append(
                Finding(
                    kind="disjoint_types",
                    subject=e,
                    detail=f"typed with disjoint classes {hit[0].value} and {hit[1].value}",
                )
            )
    return len(findings) / len(entities), findings


def domain_range_violations(
    graph: Graph, ontology: Ontology
) -> tuple[float | None, float | None, list[Finding]]:
    """Relation triples whose endpoint types conflict with domain/range."""
    total = len(graph)
    if total == 0:
        return None, None, []
    types = asserted_type_map(graph, ontology)
    findings = []
    domain_hits = 0
    range_hits = 0
    for t in graph.relation_triples():
        spec = ontology.property_spec(t.predicate)
        if spec is None:
            continue
        if spec.domain is not None:
            conflict = next(
                (c for c in sorted(types.get(t.subject, ()), key=lambda i: i.value) if ontology.disjoint(c, spec.domain)),
                None,
            )
            if conflict:
                domain_hits += 1
                findings.append(
                    Finding(
                        kind="domain",
                        subject=t.subject,
                        detail=f"subject type {conflict.value} disjoint with domain {spec.domain.value}",
                        triple=t,
                    )
                )
        if spec.range is not None and isinstance(t.object, Iri):
            conflict = next(
                (c for c in sorted(types.get(t.object, ()), key=lambda i: i.value) if ontology.disjoint(c, spec.range)),
                None,
            )
            if conflict:
                range_hits += 1
                findings.append(
                    Finding(
                        kind="range",
                        subject=t.subject,
                        detail=f"object type {conflict.value} disjoint with range {spec.range.value}",
                        triple=t,
                    )
                )
    return domain_hits / total, range_hits / total, findings


def relation_direction_violations(
    graph: Graph, ontology: Ontology
) -> tuple[float | None, list[Finding]]:
    """Relation triples that read backwards against their domain/range.

    A triple counts when some subject type falls under the declared range
    and some object type under the declared domain.  Properties whose
    domain equals their range are symmetric for this purpose and excluded.
    """
    total = len(graph)
    if total == 0:
        return None, []
    types = asserted_type_map(graph, ontology)
    findings = []
    for t in graph.relation_triples():
        spec = ontology.property_spec(t.predicate)
        if spec is None or spec.domain is None or spec.range is None:
            continue
        if spec.domain == spec.range:
            continue
        subject_in_range = any(
            ontology.is_subclass_of(c, spec.range) for c in types.get(t.subject, ())
        )
        object_in_domain = any(
            ontology.is_subclass_of(c, spec.domain) for c in types.get(t.object, ())  # type: ignore[arg-type]
        )
        if subject_in_range and object_in_domain:
            findings.append(
                Finding(
                    kind="direction",
                    subject=t.subject,
                    detail=f"{t.predicate.value} appears inverted",
                    triple=t,
                )
            )
    return len(findings) / total, findings


def literal_violations(
    graph: Graph, ontology: Ontology
) -> tuple[float | None, float | None, list[Finding], list[str]]:
    """Datatype and format failures over literal-valued triples."""
    literal_triples = graph.attribute_triples()
    if not literal_triples:
        return None, None, [], []
    findings = []
    warnings: list[str] = []
    warned: set[Iri] = set()
    datatype_hits = 0
    format_hits = 0
    for t in sorted(literal_triples, key=lambda x: (x.subject.value, x.predicate.value, x.object.lexical)):  # type: ignore[union-attr]
        spec = ontology.property_spec(t.predicate)
        if spec is None:
            continue
        lexical = t.object.lexical  # type: ignore[union-attr]
        if spec.datatype is not None:
            verdict = valid_for_datatype(lexical, spec.datatype)
            if verdict is None and spec.datatype not in warned:
                warned.add(spec.datatype)
                warnings.append(f"no validator for datatype {spec.datatype.value}; values pass unchecked")
            elif verdict is False:
                datatype_hits += 1
                findings.append(
                    Finding(
                        kind="literal_datatype",
                        subject=t.subject,
                        detail=f"{lexical!r} is not a valid {spec.datatype.local_name()}",
                        triple=t,
                    )
                )
        if spec.format is not None and re.fullmatch(spec.format, lexical) is None:
            format_hits += 1
            findings.append(
                Finding(
                    kind="literal_format",
                    subject=t.subject,
                    detail=f"{lexical!r} does not match format {spec.format!r}",
                    triple=t,
                )
            )
    total = len(literal_triples)
    return datatype_hits / total, format_hits / total, findings, warnings


def max_cardinality_findings(graph: Graph, ontology: Ontology) -> list[Finding]:
    """(entity, property) pairs exceeding a declared max cardinality."""
    counts: dict[tuple[Iri, Iri], int] = {}
    for t in graph:
        if t.predicate == RDF_TYPE:
            continue
        spec = ontology.property_spec(t.predicate)
        if spec is None or spec.max_cardinality is None:
            continue
        key = (t.subject, ontology.canonical_predicate(t.predicate))
        counts[key] = counts.get(key, 0) + 1
    findings = []
    for (entity, prop), count in sorted(counts.items(), key=lambda kv: (kv[0][0].value, kv[0][1].value)):
        limit = ontology.properties[prop].max_cardinality
        if limit is not None and count > limit:
            findings.append(
                Finding(
                    kind="max_cardinality",
                    subject=entity,
                    detail=f"{prop.value} has {count} values, max {limit}",
                )
            )
    return findings


def consistency_report(graph: Graph, ontology: Ontology) -> ConsistencyReport:
    """Run all checks and collect ratios, findings, and warnings."""
    o_dt, f_dt = disjointness_violations(graph, ontology)
    o_d, o_r, f_dr = domain_range_violations(graph, ontology)
    o_rd, f_rd = relation_direction_violations(graph, ontology)
    o_lt, o_lf, f_lit, warnings = literal_violations(graph, ontology)
    return ConsistencyReport(
        ratios={
            "disjoint_types": o_dt,
            "domain": o_d,
            "range": o_r,
            "direction": o_rd,
            "literal_datatype": o_lt,
            "literal_format": o_lf,
        },
        findings=[*f_dt, *f_dr, *f_rd, *f_lit],
        cardinality_findings=max_cardinality_findings(graph, ontology),
        warnings=warnings,
    )

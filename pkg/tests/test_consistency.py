"""Ontology-conformance ratios, findings, and datatype validators."""

from __future__ import annotations

import pytest

from conftest import (
    ACTOR,
    CODE,
    CODE_PATTERN,
    COMPANY,
    DIRECTED_BY,
    EMPLOYEES,
    FILM,
    FOUNDED,
    KNOWS,
    PERSON,
    RELEASED,
    RUNTIME,
    STARRING,
    build_test_ontology_graph,
    ex,
    lit,
)
from kgie.consistency import (
    RATIO_KEYS,
    ConsistencyReport,
    Finding,
    consistency_report,
    disjointness_violations,
    domain_range_violations,
    literal_violations,
    max_cardinality_findings,
    relation_direction_violations,
    valid_for_datatype,
)
from kgie.rdf import (
    RDF_TYPE,
    RDFS_LABEL,
    XSD_BOOLEAN,
    XSD_DATE,
    XSD_DOUBLE,
    XSD_GYEAR,
    XSD_INTEGER,
    XSD_NS,
    XSD_STRING,
    Graph,
    Iri,
    Triple,
)
from oracle import OracleOntology, oracle_consistency_ratios


# --------------------------------------------------------------------------
# datatype validators


@pytest.mark.parametrize(
    ("lexical", "datatype", "expected"),
    [
        ("anything at all", XSD_STRING, True),
        ("42", XSD_INTEGER, True),
        ("+7", XSD_INTEGER, True),
        ("-3", XSD_INTEGER, True),
        ("007", XSD_INTEGER, True),
        ("12.5", XSD_INTEGER, False),
        ("", XSD_INTEGER, False),
        ("4 2", XSD_INTEGER, False),
        ("12.5", XSD_DOUBLE, True),
        ("1e10", XSD_DOUBLE, True),
        ("-2.5E-3", XSD_DOUBLE, True),
        (".5", XSD_DOUBLE, True),
        ("5.", XSD_DOUBLE, True),
        ("INF", XSD_DOUBLE, True),
        ("-INF", XSD_DOUBLE, True),
        ("NaN", XSD_DOUBLE, True),
        ("-NaN", XSD_DOUBLE, False),
        ("abc", XSD_DOUBLE, False),
        ("2000-02-29", XSD_DATE, True),
        ("1900-02-29", XSD_DATE, False),
        ("2400-02-29", XSD_DATE, True),
        ("2001-02-29", XSD_DATE, False),
        ("2000-13-01", XSD_DATE, False),
        ("2000-00-10", XSD_DATE, False),
        ("2024-04-31", XSD_DATE, False),
        ("2024-04-30", XSD_DATE, True),
        ("2024-04-30Z", XSD_DATE, True),
        ("2024-04-30+05:30", XSD_DATE, True),
        ("99-01-01", XSD_DATE, False),
        ("1997", XSD_GYEAR, True),
        ("0097", XSD_GYEAR, True),
        ("-0044", XSD_GYEAR, True),
        ("97", XSD_GYEAR, False),
        ("1997Z", XSD_GYEAR, True),
        ("true", XSD_BOOLEAN, True),
        ("false", XSD_BOOLEAN, True),
        ("1", XSD_BOOLEAN, True),
        ("0", XSD_BOOLEAN, True),
        ("TRUE", XSD_BOOLEAN, False),
        ("yes", XSD_BOOLEAN, False),
    ],
)
def test_valid_for_datatype(lexical, datatype, expected):
    assert valid_for_datatype(lexical, datatype) is expected


def test_unknown_datatype_returns_none():
    assert valid_for_datatype("3.14", Iri(XSD_NS + "decimal")) is None


# --------------------------------------------------------------------------
# disjoint typing


def test_disjointness_one_in_ten(test_ontology):
    g = Graph([Triple(ex(f"e{i}"), RDFS_LABEL, lit(f"E{i}")) for i in range(10)])
    g.add(Triple(ex("e0"), RDF_TYPE, FILM))
    g.add(Triple(ex("e0"), RDF_TYPE, PERSON))
    ratio, findings = disjointness_violations(g, test_ontology)
    assert ratio == 0.1
    (finding,) = findings
    assert finding.kind == "disjoint_types"
    assert finding.subject == ex("e0")
    assert FILM.value in finding.detail and PERSON.value in finding.detail


def test_disjointness_through_superclass(test_ontology):
    g = Graph(
        [
            Triple(ex("e"), RDF_TYPE, ACTOR),
            Triple(ex("e"), RDF_TYPE, COMPANY),
        ]
    )
    ratio, findings = disjointness_violations(g, test_ontology)
    assert ratio == 1.0
    assert findings[0].subject == ex("e")


def test_disjointness_compatible_types_pass(test_ontology):
    g = Graph(
        [
            Triple(ex("e"), RDF_TYPE, ACTOR),
            Triple(ex("e"), RDF_TYPE, PERSON),
        ]
    )
    ratio, findings = disjointness_violations(g, test_ontology)
    assert ratio == 0.0 and not findings


def test_disjointness_empty_graph_undefined(test_ontology):
    ratio, findings = disjointness_violations(Graph(), test_ontology)
    assert ratio is None and not findings


# --------------------------------------------------------------------------
# domain / range


def test_domain_two_in_twenty(test_ontology):
    g = Graph()
    g.add(Triple(ex("c1"), RDF_TYPE, COMPANY))
    g.add(Triple(ex("c2"), RDF_TYPE, COMPANY))
    g.add(Triple(ex("p"), RDF_TYPE, PERSON))
    # Two violating rows: a Company cannot be the subject of a film relation.
    g.add(Triple(ex("c1"), DIRECTED_BY, ex("p")))
    g.add(Triple(ex("c2"), STARRING, ex("p")))
    for i in range(15):  # innocuous filler up to twenty triples
        g.add(Triple(ex(f"f{i}"), RDFS_LABEL, lit(f"F{i}")))
    assert len(g) == 20
    domain_ratio, range_ratio, findings = domain_range_violations(g, test_ontology)
    assert domain_ratio == 0.1
    assert range_ratio == 0.0
    assert {f.kind for f in findings} == {"domain"}
    assert all(f.triple is not None for f in findings)


def test_range_violation_counted(test_ontology):
    g = Graph(
        [
            Triple(ex("f"), RDF_TYPE, FILM),
            Triple(ex("c"), RDF_TYPE, COMPANY),
            Triple(ex("f"), DIRECTED_BY, ex("c")),  # object Company vs range Person
            Triple(ex("f"), RDFS_LABEL, lit("F")),
        ]
    )
    domain_ratio, range_ratio, findings = domain_range_violations(g, test_ontology)
    assert domain_ratio == 0.0
    assert range_ratio == 0.25
    assert findings[0].kind == "range"


def test_domain_superclass_type_is_compatible(test_ontology):
    # An Actor subject satisfies a Person domain; a Person does not violate
    # a Film domain unless the types are declared disjoint — here they are.
    g = Graph(
        [
            Triple(ex("a"), RDF_TYPE, ACTOR),
            Triple(ex("b"), RDF_TYPE, ACTOR),
            Triple(ex("a"), KNOWS, ex("b")),
        ]
    )
    domain_ratio, range_ratio, _ = domain_range_violations(g, test_ontology)
    assert domain_ratio == 0.0 and range_ratio == 0.0


def test_untyped_endpoints_never_violate_domain_range(test_ontology):
    g = Graph([Triple(ex("x"), DIRECTED_BY, ex("y"))])
    domain_ratio, range_ratio, findings = domain_range_violations(g, test_ontology)
    assert domain_ratio == 0.0 and range_ratio == 0.0 and not findings


def test_undeclared_property_never_violates(test_ontology):
    g = Graph(
        [
            Triple(ex("c"), RDF_TYPE, COMPANY),
            Triple(ex("c"), ex("mystery"), ex("c")),
        ]
    )
    domain_ratio, range_ratio, findings = domain_range_violations(g, test_ontology)
    assert domain_ratio == 0.0 and range_ratio == 0.0 and not findings


def test_domain_range_empty_graph_undefined(test_ontology):
    assert domain_range_violations(Graph(), test_ontology) == (None, None, [])


# --------------------------------------------------------------------------
# relation direction


def test_direction_one_in_ten(test_ontology):
    g = Graph()
    g.add(Triple(ex("p"), RDF_TYPE, PERSON))
    g.add(Triple(ex("f"), RDF_TYPE, FILM))
    g.add(Triple(ex("p"), DIRECTED_BY, ex("f")))  # reads backwards
    for i in range(7):
        g.add(Triple(ex(f"x{i}"), RDFS_LABEL, lit(f"X{i}")))
    assert len(g) == 10
    ratio, findings = relation_direction_violations(g, test_ontology)
    assert ratio == 0.1
    (finding,) = findings
    assert finding.kind == "direction"
    assert DIRECTED_BY.value in finding.detail


def test_direction_symmetric_property_excluded(test_ontology):
    g = Graph(
        [
            Triple(ex("a"), RDF_TYPE, PERSON),
            Triple(ex("b"), RDF_TYPE, PERSON),
            Triple(ex("a"), KNOWS, ex("b")),
        ]
    )
    ratio, findings = relation_direction_violations(g, test_ontology)
    assert ratio == 0.0 and not findings


def test_direction_needs_both_endpoints_typed(test_ontology):
    g = Graph(
        [
            Triple(ex("p"), RDF_TYPE, PERSON),
            Triple(ex("p"), DIRECTED_BY, ex("f")),  # object untyped
        ]
    )
    ratio, findings = relation_direction_violations(g, test_ontology)
    assert ratio == 0.0 and not findings


def test_direction_forward_triple_passes(test_ontology):
    g = Graph(
        [
            Triple(ex("f"), RDF_TYPE, FILM),
            Triple(ex("p"), RDF_TYPE, PERSON),
            Triple(ex("f"), DIRECTED_BY, ex("p")),
        ]
    )
    ratio, findings = relation_direction_violations(g, test_ontology)
    assert ratio == 0.0 and not findings


# --------------------------------------------------------------------------
# literal datatype and format


def test_literal_format_quarter(test_ontology):
    g = Graph()
    for i in range(6):
        g.add(Triple(ex(f"f{i}"), CODE, lit(f"tt000{i}")))
    g.add(Triple(ex("f6"), CODE, lit("bad!")))
    g.add(Triple(ex("f7"), CODE, lit("tt99999")))
    dt_ratio, fmt_ratio, findings, warnings = literal_violations(g, test_ontology)
    assert dt_ratio == 0.0
    assert fmt_ratio == 0.25
    assert {f.kind for f in findings} == {"literal_format"}
    assert not warnings


def test_literal_datatype_failures(test_ontology):
    g = Graph(
        [
            Triple(ex("f"), RUNTIME, lit("abc")),       # not a double
            Triple(ex("f"), RELEASED, lit("1997-12-19")),
            Triple(ex("c"), EMPLOYEES, lit("12.5")),     # not an integer
            Triple(ex("c"), FOUNDED, lit("1997")),
        ]
    )
    dt_ratio, fmt_ratio, findings, warnings = literal_violations(g, test_ontology)
    assert dt_ratio == 0.5
    assert fmt_ratio == 0.0
    assert [f.kind for f in findings] == ["literal_datatype"] * 2
    assert not warnings


def test_literal_undeclared_predicate_dilutes_only(test_ontology):
    g = Graph(
        [
            Triple(ex("f"), CODE, lit("nope")),
            Triple(ex("f"), RDFS_LABEL, lit("Label")),  # undeclared: never violates
        ]
    )
    dt_ratio, fmt_ratio, findings, _ = literal_violations(g, test_ontology)
    assert fmt_ratio == 0.5
    assert len(findings) == 1


def test_literal_unknown_datatype_passes_with_warning():
    from kgie.ontology import load_ontology
    from kgie.rdf import OWL_DATATYPE_PROPERTY, RDFS_RANGE

    decimal = Iri(XSD_NS + "decimal")
    onto = load_ontology(
        Graph(
            [
                Triple(ex("price"), RDF_TYPE, OWL_DATATYPE_PROPERTY),
                Triple(ex("price"), RDFS_RANGE, decimal),
            ]
        )
    )
    g = Graph(
        [
            Triple(ex("a"), ex("price"), lit("not-even-numeric")),
            Triple(ex("b"), ex("price"), lit("3.14")),
        ]
    )
    dt_ratio, fmt_ratio, findings, warnings = literal_violations(g, onto)
    assert dt_ratio == 0.0 and fmt_ratio == 0.0 and not findings
    assert len(warnings) == 1  # warned once, not per triple
    assert "decimal" in warnings[0]


def test_literal_ratios_undefined_without_literals(test_ontology):
    g = Graph([Triple(ex("f"), DIRECTED_BY, ex("p"))])
    dt_ratio, fmt_ratio, findings, warnings = literal_violations(g, test_ontology)
    assert dt_ratio is None and fmt_ratio is None
    assert not findings and not warnings


# --------------------------------------------------------------------------
# max cardinality


def test_max_cardinality_finding(test_ontology):
    g = Graph(
        [
            Triple(ex("f"), RUNTIME, lit("90")),
            Triple(ex("f"), RUNTIME, lit("91")),
            Triple(ex("c"), FOUNDED, lit("1990")),
            Triple(ex("c"), FOUNDED, lit("1991")),  # no declared maximum
        ]
    )
    findings = max_cardinality_findings(g, test_ontology)
    (finding,) = findings
    assert finding.kind == "max_cardinality"
    assert finding.subject == ex("f")
    assert "2 values, max 1" in finding.detail


def test_max_cardinality_not_in_ratios(test_ontology):
    g = Graph(
        [
            Triple(ex("f"), RDF_TYPE, FILM),
            Triple(ex("f"), RUNTIME, lit("90")),
            Triple(ex("f"), RUNTIME, lit("91")),
        ]
    )
    report = consistency_report(g, test_ontology)
    assert all(v == 0.0 for v in report.ratios.values())
    assert len(report.cardinality_findings) == 1
    assert not report.findings


# --------------------------------------------------------------------------
# combined report


def violation_zoo(test_ontology) -> Graph:
    """One violation of every kind plus healthy rows."""
    g = Graph()
    g.add(Triple(ex("dual"), RDF_TYPE, FILM))
    g.add(Triple(ex("dual"), RDF_TYPE, COMPANY))
    g.add(Triple(ex("f"), RDF_TYPE, FILM))
    g.add(Triple(ex("p"), RDF_TYPE, PERSON))
    g.add(Triple(ex("c"), RDF_TYPE, COMPANY))
    g.add(Triple(ex("c"), DIRECTED_BY, ex("p")))   # domain violation
    g.add(Triple(ex("f"), DIRECTED_BY, ex("c")))   # range violation
    g.add(Triple(ex("p"), STARRING, ex("f")))      # inverted direction
    g.add(Triple(ex("f"), DIRECTED_BY, ex("p")))   # healthy relation
    g.add(Triple(ex("f"), RUNTIME, lit("abc")))    # datatype violation
    g.add(Triple(ex("f"), CODE, lit("zz")))        # format violation
    g.add(Triple(ex("f"), CODE, lit("tt0001")))    # healthy literal
    g.add(Triple(ex("f"), RELEASED, lit("1999-03-31")))
    return g


def test_consistency_report_full_zoo(test_ontology):
    g = violation_zoo(test_ontology)
    report = consistency_report(g, test_ontology)
    entities = g.entities()
    total = len(g)
    literals = len(g.attribute_triples())
    # The inverted STARRING row violates domain, range, and direction at once.
    assert report.ratios == {
        "disjoint_types": 1 / len(entities),
        "domain": 2 / total,
        "range": 2 / total,
        "direction": 1 / total,
        "literal_datatype": 1 / literals,
        "literal_format": 1 / literals,
    }
    assert tuple(report.ratios) == RATIO_KEYS
    kinds = [f.kind for f in report.findings]
    assert kinds.count("disjoint_types") == 1
    assert kinds.count("direction") == 1
    assert not report.cardinality_findings


def test_consistency_report_matches_oracle(test_ontology):
    g = violation_zoo(test_ontology)
    oracle_onto = OracleOntology(
        build_test_ontology_graph(), {CODE.value: CODE_PATTERN}
    )
    assert consistency_report(g, test_ontology).ratios == oracle_consistency_ratios(
        g, oracle_onto
    )


def test_consistency_report_empty_graph(test_ontology):
    report = consistency_report(Graph(), test_ontology)
    assert report.ratios == {k: None for k in RATIO_KEYS}
    assert report.compliance == {k: None for k in RATIO_KEYS}
    assert not report.findings and not report.cardinality_findings


def test_compliance_is_the_complement():
    report = ConsistencyReport(
        ratios={"domain": 0.25, "range": None, "direction": 0.0}
    )
    assert report.compliance == {"domain": 0.75, "range": None, "direction": 1.0}


def test_adding_valid_triples_lowers_violation_ratios(test_ontology):
    g = Graph(
        [
            Triple(ex("c"), RDF_TYPE, COMPANY),
            Triple(ex("p"), RDF_TYPE, PERSON),
            Triple(ex("c"), DIRECTED_BY, ex("p")),
        ]
    )
    before = consistency_report(g, test_ontology).ratios["domain"]
    g.add(Triple(ex("f"), RDFS_LABEL, lit("F")))
    after = consistency_report(g, test_ontology).ratios["domain"]
    assert before == pytest.approx(1 / 3)
    assert after == pytest.approx(1 / 4)
    assert after < before

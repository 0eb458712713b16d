"""Shared fixtures and small graph-building helpers for the test suite."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

from kgie.ontology import Ontology, load_ontology
from kgie.rdf import (
    OWL_CLASS,
    OWL_DATATYPE_PROPERTY,
    OWL_DISJOINT_WITH,
    OWL_MAX_CARDINALITY,
    OWL_OBJECT_PROPERTY,
    RDF_TYPE,
    RDFS_DOMAIN,
    RDFS_LABEL,
    RDFS_RANGE,
    RDFS_SUBCLASS_OF,
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
from kgie.synth import movie_ontology_graph, MOVIE_FORMAT_PATTERNS

EX = "http://example.org/x/"

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def ex(name: str) -> Iri:
    """Shorthand IRI in the test namespace."""
    return Iri(EX + name)


def lit(text: str, datatype: Iri | None = None, language: str | None = None) -> Literal:
    return Literal(text, datatype=datatype, language=language)


def triple(s: Iri, p: Iri, o) -> Triple:
    return Triple(s, p, o)


# Test-ontology vocabulary: a subclass hierarchy plus disjointness, used
# wherever the flat movie ontology is not discriminating enough.
WORK = ex("Work")
FILM = ex("Film")
PERSON = ex("Person")
ACTOR = ex("Actor")
COMPANY = ex("Company")

DIRECTED_BY = ex("directedBy")
STARRING = ex("starring")
PRODUCED_BY = ex("producedBy")
KNOWS = ex("knows")
RUNTIME = ex("runtime")
RELEASED = ex("released")
FOUNDED = ex("founded")
EMPLOYEES = ex("employees")
CODE = ex("code")

CODE_PATTERN = r"tt[0-9]{4}"


def build_test_ontology_graph() -> Graph:
    """Declarations: Film⊑Work, Actor⊑Person, three disjoint pairs, mixed properties."""
    g = Graph()
    for c in (WORK, FILM, PERSON, ACTOR, COMPANY):
        g.add(Triple(c, RDF_TYPE, OWL_CLASS))
    g.add(Triple(FILM, RDFS_SUBCLASS_OF, WORK))
    g.add(Triple(ACTOR, RDFS_SUBCLASS_OF, PERSON))
    g.add(Triple(FILM, OWL_DISJOINT_WITH, PERSON))
    g.add(Triple(FILM, OWL_DISJOINT_WITH, COMPANY))
    g.add(Triple(PERSON, OWL_DISJOINT_WITH, COMPANY))

    def relation(p: Iri, domain: Iri, range_: Iri) -> None:
        g.add(Triple(p, RDF_TYPE, OWL_OBJECT_PROPERTY))
        g.add(Triple(p, RDFS_DOMAIN, domain))
        g.add(Triple(p, RDFS_RANGE, range_))

    def attribute(p: Iri, domain: Iri, datatype: Iri, max_one: bool = False) -> None:
        g.add(Triple(p, RDF_TYPE, OWL_DATATYPE_PROPERTY))
        g.add(Triple(p, RDFS_DOMAIN, domain))
        g.add(Triple(p, RDFS_RANGE, datatype))
        if max_one:
            g.add(Triple(p, OWL_MAX_CARDINALITY, Literal("1", datatype=XSD_INTEGER)))

    relation(DIRECTED_BY, FILM, PERSON)
    relation(STARRING, FILM, PERSON)
    relation(PRODUCED_BY, FILM, COMPANY)
    relation(KNOWS, PERSON, PERSON)
    attribute(RUNTIME, FILM, XSD_DOUBLE, max_one=True)
    attribute(RELEASED, FILM, XSD_DATE, max_one=True)
    attribute(FOUNDED, COMPANY, XSD_GYEAR)
    attribute(EMPLOYEES, COMPANY, XSD_INTEGER)
    attribute(CODE, FILM, XSD_STRING)
    return g


@pytest.fixture(scope="session")
def test_ontology() -> Ontology:
    return load_ontology(build_test_ontology_graph(), {CODE.value: CODE_PATTERN})


@pytest.fixture(scope="session")
def movie_ontology() -> Ontology:
    return load_ontology(movie_ontology_graph(), MOVIE_FORMAT_PATTERNS)


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


def typed_entity(g: Graph, entity: Iri, cls: Iri, label: str | None = None) -> Iri:
    """Add a typed (and optionally labeled) entity to a graph."""
    g.add(Triple(entity, RDF_TYPE, cls))
    if label is not None:
        g.add(Triple(entity, RDFS_LABEL, Literal(label)))
    return entity


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when != "call":
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    number = name.split("_")[2]
    outcome = "PASS" if report.passed else "FAIL"
    sys.stdout.write(f"\nacceptance criterion {number}: {outcome} ({name})\n")
    sys.stdout.flush()

"""Core RDF data model: IRIs, literals, triples, and graphs.

The model is deliberately syntactic.  Two literals are equal only if their
lexical form, datatype, and language tag all coincide; value-level
equivalence (``"1997"`` vs ``"1997"^^xsd:gYear``) is handled by the
alignment layer, not here.  Blank nodes are not supported anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __str__(self) -> str:
        return self.value

    def local_name(self) -> str:
        """Segment after the last '#' or '/', used for display purposes."""
        for sep in ("#", "/"):
            if sep in self.value:
                return self.value.rsplit(sep, 1)[1]
        return self.value


@dataclass(frozen=True, slots=True)
class Literal:
    """An RDF literal with optional datatype IRI or language tag."""

    lexical: str
    datatype: Iri | None = None
    language: str | None = None

    def __post_init__(self) -> None:
        if self.datatype is not None and self.language is not None:
            raise ValueError("literal cannot carry both a datatype and a language tag")


Term = Union[Iri, Literal]


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Iri
    predicate: Iri
    object: Term


class Graph:
    """A set of triples.

    Duplicate insertions collapse; iteration order is unspecified (use
    :func:`kgie.nt.serialize_ntriples` for a canonical ordering).
    """

    __slots__ = ("_triples",)

    def __init__(self, triples: Iterable[Triple] = ()) -> None:
        self._triples: set[Triple] = set(triples)

    def add(self, triple: Triple) -> None:
        self._triples.add(triple)

    def update(self, triples: Iterable[Triple]) -> None:
        self._triples.update(triples)

    def discard(self, triple: Triple) -> None:
        self._triples.discard(triple)

    def copy(self) -> "Graph":
        return Graph(self._triples)

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def triples(self) -> frozenset[Triple]:
        return frozenset(self._triples)

    def entities(self) -> set[Iri]:
        """Entity set: subject IRIs plus IRI objects of non-type predicates.

        Objects of ``rdf:type`` are classes and deliberately excluded.
        """
        found: set[Iri] = set()
        for t in self._triples:
            found.add(t.subject)
            if isinstance(t.object, Iri) and t.predicate != RDF_TYPE:
                found.add(t.object)
        return found

    def predicates(self) -> set[Iri]:
        return {t.predicate for t in self._triples}

    def classes_used(self) -> set[Iri]:
        """Distinct IRI objects of rdf:type triples."""
        return {
            t.object
            for t in self._triples
            if t.predicate == RDF_TYPE and isinstance(t.object, Iri)
        }

    def relation_triples(self) -> list[Triple]:
        """Triples with an IRI object and a predicate other than rdf:type."""
        return [
            t
            for t in self._triples
            if isinstance(t.object, Iri) and t.predicate != RDF_TYPE
        ]

    def attribute_triples(self) -> list[Triple]:
        """Triples with a literal object."""
        return [t for t in self._triples if isinstance(t.object, Literal)]

    def subject_triples(self, subject: Iri) -> list[Triple]:
        return [t for t in self._triples if t.subject == subject]

    def objects(self, subject: Iri, predicate: Iri) -> list[Term]:
        return [
            t.object
            for t in self._triples
            if t.subject == subject and t.predicate == predicate
        ]


def graph_difference(a: Graph, b: Graph) -> Graph:
    """Triples of ``a`` that are not in ``b`` (plain set difference)."""
    return Graph(a.triples() - b.triples())


def graph_union(a: Graph, b: Graph) -> Graph:
    return Graph(a.triples() | b.triples())


class ParseError(ValueError):
    """Raised on malformed N-Triples input; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OntologyError(ValueError):
    """Raised when ontology declarations are structurally invalid."""


# Recognized vocabulary.
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
SKOS_NS = "http://www.w3.org/2004/02/skos/core#"

RDF_TYPE = Iri(RDF_NS + "type")
RDFS_LABEL = Iri(RDFS_NS + "label")
RDFS_SUBCLASS_OF = Iri(RDFS_NS + "subClassOf")
RDFS_DOMAIN = Iri(RDFS_NS + "domain")
RDFS_RANGE = Iri(RDFS_NS + "range")
OWL_CLASS = Iri(OWL_NS + "Class")
OWL_OBJECT_PROPERTY = Iri(OWL_NS + "ObjectProperty")
OWL_DATATYPE_PROPERTY = Iri(OWL_NS + "DatatypeProperty")
OWL_DISJOINT_WITH = Iri(OWL_NS + "disjointWith")
OWL_EQUIVALENT_CLASS = Iri(OWL_NS + "equivalentClass")
OWL_EQUIVALENT_PROPERTY = Iri(OWL_NS + "equivalentProperty")
OWL_MAX_CARDINALITY = Iri(OWL_NS + "maxCardinality")
SKOS_ALT_LABEL = Iri(SKOS_NS + "altLabel")

XSD_STRING = Iri(XSD_NS + "string")
XSD_INTEGER = Iri(XSD_NS + "integer")
XSD_DOUBLE = Iri(XSD_NS + "double")
XSD_DATE = Iri(XSD_NS + "date")
XSD_GYEAR = Iri(XSD_NS + "gYear")
XSD_BOOLEAN = Iri(XSD_NS + "boolean")

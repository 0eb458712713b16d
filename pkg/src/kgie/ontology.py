"""Lightweight ontology model used for typing and consistency checks.

An ontology is loaded from plain triples over a small recognized
vocabulary (class and property declarations, subclass edges, disjointness,
domain/range, equivalence, max cardinality).  Equivalent classes and
properties are collapsed to a canonical representative (the
lexicographically smallest IRI) at load time, so all downstream lookups
work on canonical IRIs.

Value format patterns cannot be expressed in that vocabulary; they arrive
through a sidecar mapping of property IRI to regular expression, see
:meth:`Ontology.with_formats`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .rdf import (
    OWL_CLASS,
    OWL_DATATYPE_PROPERTY,
    OWL_DISJOINT_WITH,
    OWL_EQUIVALENT_CLASS,
    OWL_EQUIVALENT_PROPERTY,
    OWL_MAX_CARDINALITY,
    OWL_OBJECT_PROPERTY,
    RDF_TYPE,
    RDFS_DOMAIN,
    RDFS_LABEL,
    RDFS_RANGE,
    RDFS_SUBCLASS_OF,
    SKOS_ALT_LABEL,
    Graph,
    Iri,
    Literal,
    OntologyError,
)
from .nt import render_triple

RELATION = "relation"
ATTRIBUTE = "attribute"


@dataclass(frozen=True)
class PropertySpec:
    """Declared property: a relation (entity-valued) or attribute (literal-valued)."""

    iri: Iri
    kind: str
    domain: Iri | None = None
    range: Iri | None = None
    datatype: Iri | None = None
    format: str | None = None
    max_cardinality: int | None = None


@dataclass
class Ontology:
    classes: set[Iri] = field(default_factory=set)
    properties: dict[Iri, PropertySpec] = field(default_factory=dict)
    disjoint_pairs: set[frozenset[Iri]] = field(default_factory=set)
    warnings: list[str] = field(default_factory=list)
    _ancestors: dict[Iri, frozenset[Iri]] = field(default_factory=dict)
    _class_canon: dict[Iri, Iri] = field(default_factory=dict)
    _property_canon: dict[Iri, Iri] = field(default_factory=dict)

    def canonical_class(self, c: Iri) -> Iri:
        return self._class_canon.get(c, c)

    def canonical_predicate(self, p: Iri) -> Iri:
        return self._property_canon.get(p, p)

    def property_spec(self, p: Iri) -> PropertySpec | None:
        return self.properties.get(self.canonical_predicate(p))

    def superclasses(self, c: Iri) -> frozenset[Iri]:
        """Reflexive-transitive superclass set, canonical IRIs."""
        c = self.canonical_class(c)
        return self._ancestors.get(c, frozenset((c,)))

    def is_subclass_of(self, c: Iri, d: Iri) -> bool:
        return self.canonical_class(d) in self.superclasses(c)

    def disjoint(self, c: Iri, d: Iri) -> bool:
        """True when any declared disjoint pair covers ancestors of c and d."""
        up_c = self.superclasses(c)
        up_d = self.superclasses(d)
        for pair in self.disjoint_pairs:
            a, b = tuple(pair)
            if (a in up_c and b in up_d) or (b in up_c and a in up_d):
                return True
        return False

    def with_formats(self, formats: dict[str, str]) -> "Ontology":
        """Return a copy whose property specs carry the given format patterns."""
        out = replace_ontology(self)
        for prop_iri, pattern in sorted(formats.items()):
            canon = out.canonical_predicate(Iri(prop_iri))
            spec = out.properties.get(canon)
            if spec is None:
                out.warnings.append(f"format pattern for undeclared property {prop_iri}")
                continue
            try:
                re.compile(pattern)
            except re.error as exc:
                raise OntologyError(f"bad format pattern for {prop_iri}: {exc}") from exc
            out.properties[canon] = replace(spec, format=pattern)
        return out


def replace_ontology(o: Ontology) -> Ontology:
    return Ontology(
        classes=set(o.classes),
        properties=dict(o.properties),
        disjoint_pairs=set(o.disjoint_pairs),
        warnings=list(o.warnings),
        _ancestors=dict(o._ancestors),
        _class_canon=dict(o._class_canon),
        _property_canon=dict(o._property_canon),
    )


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[Iri, Iri] = {}

    def find(self, x: Iri) -> Iri:
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: Iri, b: Iri) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # Keep the lexicographically smallest IRI as representative.
        keep, drop = sorted((ra, rb), key=lambda i: i.value)
        self.parent[drop] = keep

    def canon_map(self) -> dict[Iri, Iri]:
        return {x: self.find(x) for x in list(self.parent)}


def load_ontology(graph: Graph, formats: dict[str, str] | None = None) -> Ontology:
    """Build an :class:`Ontology` from declaration triples.

    Raises :class:`OntologyError` on subclass cycles, on disjointness or
    domain/range statements that reference undeclared classes, and on
    invalid max-cardinality values.  Unrecognized triples are collected in
    ``Ontology.warnings`` rather than rejected.
    """
    classes: set[Iri] = set()
    relations: set[Iri] = set()
    attributes: set[Iri] = set()
    warnings: list[str] = []

    for t in graph:
        if t.predicate == RDF_TYPE and t.object == OWL_CLASS:
            classes.add(t.subject)
        elif t.predicate == RDF_TYPE and t.object == OWL_OBJECT_PROPERTY:
            relations.add(t.subject)
        elif t.predicate == RDF_TYPE and t.object == OWL_DATATYPE_PROPERTY:
            attributes.add(t.subject)

    both = relations & attributes
    if both:
        names = ", ".join(sorted(i.value for i in both))
        raise OntologyError(f"property declared as both relation and attribute: {names}")

    class_uf = _UnionFind()
    prop_uf = _UnionFind()
    for c in classes:
        class_uf.find(c)
    for p in relations | attributes:
        prop_uf.find(p)

    for t in graph:
        if t.predicate == OWL_EQUIVALENT_CLASS:
            if t.subject in classes and t.object in classes:
                class_uf.union(t.subject, t.object)
            else:
                warnings.append(f"equivalence between undeclared classes: {render_triple(t)}")
        elif t.predicate == OWL_EQUIVALENT_PROPERTY:
            declared = relations | attributes
            if t.subject in declared and t.object in declared:
                prop_uf.union(t.subject, t.object)
            else:
                warnings.append(f"equivalence between undeclared properties: {render_triple(t)}")

    class_canon = class_uf.canon_map()
    prop_canon = prop_uf.canon_map()

    def ccanon(c: Iri) -> Iri:
        return class_canon.get(c, c)

    def pcanon(p: Iri) -> Iri:
        return prop_canon.get(p, p)

    subclass_edges: dict[Iri, set[Iri]] = {}
    disjoint_pairs: set[frozenset[Iri]] = set()
    domains: dict[Iri, Iri] = {}
    ranges: dict[Iri, Iri] = {}
    datatypes: dict[Iri, Iri] = {}
    max_cards: dict[Iri, int] = {}

    recognized_predicates = {
        RDF_TYPE,
        RDFS_SUBCLASS_OF,
        RDFS_DOMAIN,
        RDFS_RANGE,
        OWL_DISJOINT_WITH,
        OWL_EQUIVALENT_CLASS,
        OWL_EQUIVALENT_PROPERTY,
        OWL_MAX_CARDINALITY,
        RDFS_LABEL,
        SKOS_ALT_LABEL,
    }
    declared_props = relations | attributes

    for t in graph:
        if t.predicate == RDFS_SUBCLASS_OF:
            if not isinstance(t.object, Iri):
                raise OntologyError(f"subclass of a literal: {render_triple(t)}")
            if t.subject not in classes or t.object not in classes:
                warnings.append(f"subclass edge on undeclared class: {render_triple(t)}")
                continue
            sub, sup = ccanon(t.subject), ccanon(t.object)
            if sub != sup:
                subclass_edges.setdefault(sub, set()).add(sup)
        elif t.predicate == OWL_DISJOINT_WITH:
            if not isinstance(t.object, Iri) or t.subject not in classes or t.object not in classes:
                raise OntologyError(f"disjointness references undeclared class: {render_triple(t)}")
            a, b = ccanon(t.subject), ccanon(t.object)
            if a == b:
                raise OntologyError(f"class declared disjoint with itself: {t.subject.value}")
            disjoint_pairs.add(frozenset((a, b)))
        elif t.predicate == RDFS_DOMAIN:
            if t.subject not in declared_props:
                warnings.append(f"domain on undeclared property: {render_triple(t)}")
                continue
            if not isinstance(t.object, Iri) or t.object not in classes:
                raise OntologyError(f"domain references undeclared class: {render_triple(t)}")
            domains[pcanon(t.subject)] = ccanon(t.object)
        elif t.predicate == RDFS_RANGE:
            if t.subject not in declared_props:
                warnings.append(f"range on undeclared property: {render_triple(t)}")
                continue
            if t.subject in relations:
                if not isinstance(t.object, Iri) or t.object not in classes:
                    raise OntologyError(f"range references undeclared class: {render_triple(t)}")
                ranges[pcanon(t.subject)] = ccanon(t.object)
            else:
                if not isinstance(t.object, Iri):
                    raise OntologyError(f"attribute range must be a datatype IRI: {render_triple(t)}")
                datatypes[pcanon(t.subject)] = t.object
        elif t.predicate == OWL_MAX_CARDINALITY:
            if t.subject not in declared_props:
                warnings.append(f"max cardinality on undeclared property: {render_triple(t)}")
                continue
            if not isinstance(t.object, Literal):
                raise OntologyError(f"max cardinality must be a literal: {render_triple(t)}")
            try:
                value = int(t.object.lexical)
            except ValueError:
                raise OntologyError(
                    f"max cardinality is not an integer: {render_triple(t)}"
                ) from None
            if value < 0:
                raise OntologyError(f"negative max cardinality: {render_triple(t)}")
            max_cards[pcanon(t.subject)] = value
        elif t.predicate in (RDFS_LABEL, SKOS_ALT_LABEL):
            pass  # annotations carry no structural meaning here
        elif t.predicate == RDF_TYPE:
            if t.object not in (OWL_CLASS, OWL_OBJECT_PROPERTY, OWL_DATATYPE_PROPERTY):
                warnings.append(f"ignored declaration: {render_triple(t)}")
        elif t.predicate not in recognized_predicates:
            warnings.append(f"ignored triple with unknown vocabulary: {render_triple(t)}")

    ancestors = _transitive_ancestors(
        {ccanon(c) for c in classes}, subclass_edges
    )

    properties: dict[Iri, PropertySpec] = {}
    for p in sorted(declared_props, key=lambda i: i.value):
        canon = pcanon(p)
        if canon in properties:
            continue
        properties[canon] = PropertySpec(
            iri=canon,
            kind=RELATION if p in relations else ATTRIBUTE,
            domain=domains.get(canon),
            range=ranges.get(canon),
            datatype=datatypes.get(canon),
            max_cardinality=max_cards.get(canon),
        )

    ontology = Ontology(
        classes=classes,
        properties=properties,
        disjoint_pairs=disjoint_pairs,
        warnings=warnings,
        _ancestors=ancestors,
        _class_canon=class_canon,
        _property_canon=prop_canon,
    )
    if formats:
        ontology = ontology.with_formats(formats)
    return ontology


def _transitive_ancestors(
    classes: set[Iri], edges: dict[Iri, set[Iri]]
) -> dict[Iri, frozenset[Iri]]:
    """Reflexive-transitive closure of subclass edges; cycles are an error."""
    closed: dict[Iri, frozenset[Iri]] = {}
    in_progress: set[Iri] = set()

    def close(c: Iri) -> frozenset[Iri]:
        if c in closed:
            return closed[c]
        if c in in_progress:
            raise OntologyError(f"subclass cycle involving {c.value}")
        in_progress.add(c)
        acc: set[Iri] = {c}
        for parent in edges.get(c, ()):
            acc.update(close(parent))
        in_progress.discard(c)
        closed[c] = frozenset(acc)
        return closed[c]

    for c in sorted(classes | set(edges), key=lambda i: i.value):
        close(c)
    return closed


def asserted_types(graph: Graph, entity: Iri, ontology: Ontology | None = None) -> set[Iri]:
    """Directly asserted classes of an entity, without closure."""
    types = {
        t.object
        for t in graph
        if t.subject == entity and t.predicate == RDF_TYPE and isinstance(t.object, Iri)
    }
    if ontology is not None:
        types = {ontology.canonical_class(c) for c in types}
    return types


def types_of(graph: Graph, entity: Iri, ontology: Ontology) -> set[Iri]:
    """Asserted classes of an entity plus all declared superclasses."""
    closed: set[Iri] = set()
    for c in asserted_types(graph, entity, ontology):
        closed.update(ontology.superclasses(c))
    return closed


def asserted_type_map(graph: Graph, ontology: Ontology | None = None) -> dict[Iri, set[Iri]]:
    """Asserted classes per subject, canonicalized, in one graph scan."""
    out: dict[Iri, set[Iri]] = {}
    for t in graph:
        if t.predicate == RDF_TYPE and isinstance(t.object, Iri):
            c = ontology.canonical_class(t.object) if ontology else t.object
            out.setdefault(t.subject, set()).add(c)
    return out


def closed_type_map(graph: Graph, ontology: Ontology) -> dict[Iri, set[Iri]]:
    """Upward-closed classes per subject, in one graph scan."""
    out: dict[Iri, set[Iri]] = {}
    for entity, classes in asserted_type_map(graph, ontology).items():
        closed: set[Iri] = set()
        for c in classes:
            closed.update(ontology.superclasses(c))
        out[entity] = closed
    return out

"""Deterministic synthetic movie-domain graphs for fixtures and demos.

Builds a reference knowledge graph of films, persons, and companies over
a small ontology (three mutually disjoint classes, eight relations,
fifteen attributes).  Output depends only on the arguments: all draws
come from a seeded SplitMix64, and an optional triple target is hit
exactly by topping up with unique filler genre values.

Labels are built to keep distinct entities dissimilar under trigram
Dice.  A label like ``Film a0b0c4d2e6`` encodes the entity number as
digits interleaved with per-position anchor letters plus a check digit:
anchor letters stop a character trigram from one digit position ever
matching a trigram of another position, and the check digit makes any
two distinct numbers differ in at least three trigram windows.  The
worst-case similarity between distinct labels stays below 0.83, well
under both the 0.9 evaluation and 0.95 resolution thresholds, while
identical copies of an entity still score 1.0.
"""

from __future__ import annotations

from .rdf import (
    OWL_CLASS,
    OWL_DATATYPE_PROPERTY,
    OWL_DISJOINT_WITH,
    OWL_MAX_CARDINALITY,
    OWL_OBJECT_PROPERTY,
    RDF_TYPE,
    RDFS_DOMAIN,
    RDFS_LABEL,
    RDFS_RANGE,
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
from .rng import SplitMix64

SCHEMA_NS = "http://example.org/schema/"
ENTITY_NS = "http://example.org/kg/"

FILM = Iri(SCHEMA_NS + "Film")
PERSON = Iri(SCHEMA_NS + "Person")
COMPANY = Iri(SCHEMA_NS + "Company")


def _prop(name: str) -> Iri:
    return Iri(SCHEMA_NS + name)


STARRING = _prop("starring")
DIRECTOR = _prop("director")
WRITER = _prop("writer")
PRODUCER = _prop("producer")
MUSIC_COMPOSER = _prop("musicComposer")
CINEMATOGRAPHY = _prop("cinematography")
PRODUCTION = _prop("production")
DISTRIBUTOR = _prop("distributor")

RUNTIME = _prop("runtime")
RELEASE_DATE = _prop("releaseDate")
BUDGET = _prop("budget")
GROSS = _prop("gross")
GENRE = _prop("genre")
COUNTRY = _prop("country")
LANGUAGE = _prop("language")
IMDB_ID = _prop("imdbId")
ABSTRACT = _prop("abstract")
BIRTH_DATE = _prop("birthDate")
DEATH_DATE = _prop("deathDate")
BIRTH_NAME = _prop("birthName")
FOUNDING_YEAR = _prop("foundingYear")
NUMBER_OF_EMPLOYEES = _prop("numberOfEmployees")
CITY = _prop("city")

MOVIE_FORMAT_PATTERNS = {IMDB_ID.value: r"tt[0-9]{7,8}"}

_GENRES = ("drama", "comedy", "thriller", "documentary", "animation", "adventure", "horror")
_COUNTRIES = ("United States", "France", "Japan", "Germany", "Brazil", "India")
_LANGUAGES = ("English", "French", "Japanese", "German", "Portuguese", "Hindi")
_CITIES = ("Los Angeles", "Paris", "Tokyo", "Berlin", "Mumbai", "London")


def movie_ontology_graph() -> Graph:
    """Declaration triples for the movie ontology."""
    g = Graph()

    def declare_class(c: Iri) -> None:
        g.add(Triple(c, RDF_TYPE, OWL_CLASS))

    def relation(p: Iri, domain: Iri, range_: Iri, max_one: bool = False) -> None:
        g.add(Triple(p, RDF_TYPE, OWL_OBJECT_PROPERTY))
        g.add(Triple(p, RDFS_DOMAIN, domain))
        g.add(Triple(p, RDFS_RANGE, range_))
        if max_one:
            g.add(Triple(p, OWL_MAX_CARDINALITY, Literal("1", datatype=XSD_INTEGER)))

    def attribute(p: Iri, domain: Iri, datatype: Iri, max_one: bool = False) -> None:
        g.add(Triple(p, RDF_TYPE, OWL_DATATYPE_PROPERTY))
        g.add(Triple(p, RDFS_DOMAIN, domain))
        g.add(Triple(p, RDFS_RANGE, datatype))
        if max_one:
            g.add(Triple(p, OWL_MAX_CARDINALITY, Literal("1", datatype=XSD_INTEGER)))

    for c in (FILM, PERSON, COMPANY):
        declare_class(c)
    g.add(Triple(FILM, OWL_DISJOINT_WITH, PERSON))
    g.add(Triple(FILM, OWL_DISJOINT_WITH, COMPANY))
    g.add(Triple(PERSON, OWL_DISJOINT_WITH, COMPANY))

    for p in (STARRING, WRITER, PRODUCER):
        relation(p, FILM, PERSON)
    for p in (DIRECTOR, MUSIC_COMPOSER, CINEMATOGRAPHY):
        relation(p, FILM, PERSON)
    relation(PRODUCTION, FILM, COMPANY)
    relation(DISTRIBUTOR, FILM, COMPANY)

    attribute(RUNTIME, FILM, XSD_DOUBLE, max_one=True)
    attribute(RELEASE_DATE, FILM, XSD_DATE, max_one=True)
    attribute(BUDGET, FILM, XSD_DOUBLE, max_one=True)
    attribute(GROSS, FILM, XSD_DOUBLE, max_one=True)
    attribute(GENRE, FILM, XSD_STRING)
    attribute(COUNTRY, FILM, XSD_STRING)
    attribute(LANGUAGE, FILM, XSD_STRING)
    attribute(IMDB_ID, FILM, XSD_STRING, max_one=True)
    attribute(ABSTRACT, FILM, XSD_STRING, max_one=True)
    attribute(BIRTH_DATE, PERSON, XSD_DATE, max_one=True)
    attribute(DEATH_DATE, PERSON, XSD_DATE, max_one=True)
    attribute(BIRTH_NAME, PERSON, XSD_STRING, max_one=True)
    attribute(FOUNDING_YEAR, COMPANY, XSD_GYEAR, max_one=True)
    attribute(NUMBER_OF_EMPLOYEES, COMPANY, XSD_INTEGER, max_one=True)
    attribute(CITY, COMPANY, XSD_STRING, max_one=True)
    return g


_ANCHOR_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _coded_suffix(index: int, width: int = 4) -> str:
    """Anchored, check-digit-protected rendering of an entity number."""
    digits = [int(ch) for ch in f"{index:0{width}d}"]
    if len(digits) > width:
        raise ValueError(f"index {index} does not fit in width {width}")
    digits.append(sum(digits) % 10)
    return "".join(f"{_ANCHOR_LETTERS[pos]}{d}" for pos, d in enumerate(digits))


class _Deck:
    """Deals pool members in shuffled order, covering everyone before reuse."""

    def __init__(self, pool: list[Iri], rng: SplitMix64) -> None:
        self.pool = pool
        self.rng = rng
        self.cards: list[Iri] = []

    def draw(self) -> Iri:
        if not self.cards:
            self.cards = list(self.pool)
            self.rng.shuffle(self.cards)
        return self.cards.pop()


def build_reference(
    films: int,
    persons: int | None = None,
    companies: int | None = None,
    rng_seed: int = 0,
    triple_target: int | None = None,
) -> Graph:
    """A synthetic movie reference graph.

    Every person and company is dealt into at least one film when the
    pools are small enough, so the whole pool is reachable from the
    films.  With ``triple_target`` the exact total triple count is met by
    adding unique filler genre values (the target must not be below the
    organically generated count).
    """
    if films < 1:
        raise ValueError("need at least one film")
    persons = persons if persons is not None else max(2, round(films * 8.8))
    companies = companies if companies is not None else max(2, round(films * 1.4))
    rng = SplitMix64(rng_seed)
    g = Graph()

    def lit(text: str) -> Literal:
        return Literal(text)

    film_iris = [Iri(f"{ENTITY_NS}film-{i:05d}") for i in range(1, films + 1)]
    person_iris = [Iri(f"{ENTITY_NS}person-{i:05d}") for i in range(1, persons + 1)]
    company_iris = [Iri(f"{ENTITY_NS}company-{i:05d}") for i in range(1, companies + 1)]

    person_labels: dict[Iri, str] = {}
    for i, p in enumerate(person_iris, start=1):
        label = f"Person {_coded_suffix(i)}"
        person_labels[p] = label
        g.add(Triple(p, RDF_TYPE, PERSON))
        g.add(Triple(p, RDFS_LABEL, lit(label)))
        birth_year = rng.randint(1920, 2000)
        if rng.random() < 0.8:
            g.add(
                Triple(
                    p,
                    BIRTH_DATE,
                    Literal(f"{birth_year}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}", datatype=XSD_DATE),
                )
            )
        if rng.random() < 0.2:
            g.add(
                Triple(
                    p,
                    DEATH_DATE,
                    Literal(f"{birth_year + rng.randint(30, 80)}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}", datatype=XSD_DATE),
                )
            )
        if rng.random() < 0.3:
            g.add(Triple(p, BIRTH_NAME, lit(f"{label} at birth")))

    for i, c in enumerate(company_iris, start=1):
        g.add(Triple(c, RDF_TYPE, COMPANY))
        g.add(Triple(c, RDFS_LABEL, lit(f"Company {_coded_suffix(i)}")))
        if rng.random() < 0.8:
            g.add(Triple(c, FOUNDING_YEAR, Literal(str(rng.randint(1900, 2015)), datatype=XSD_GYEAR)))
        if rng.random() < 0.5:
            g.add(Triple(c, NUMBER_OF_EMPLOYEES, Literal(str(rng.randint(10, 250000)), datatype=XSD_INTEGER)))
        if rng.random() < 0.5:
            g.add(Triple(c, CITY, lit(rng.choice(_CITIES))))

    cast_deck = _Deck(person_iris, rng)
    company_deck = _Deck(company_iris, rng)
    for i, f in enumerate(film_iris, start=1):
        label = f"Film {_coded_suffix(i)}"
        g.add(Triple(f, RDF_TYPE, FILM))
        g.add(Triple(f, RDFS_LABEL, lit(label)))

        cast = []
        seen: set[Iri] = set()
        for _ in range(rng.randint(5, 9)):
            person = cast_deck.draw()
            if person in seen:
                continue
            seen.add(person)
            cast.append(person)
        for person in cast:
            g.add(Triple(f, STARRING, person))
        director = rng.choice(person_iris)
        g.add(Triple(f, DIRECTOR, director))
        if rng.random() < 0.5:
            g.add(Triple(f, WRITER, rng.choice(person_iris)))
        if rng.random() < 0.4:
            g.add(Triple(f, PRODUCER, rng.choice(person_iris)))
        if rng.random() < 0.3:
            g.add(Triple(f, MUSIC_COMPOSER, rng.choice(person_iris)))
        if rng.random() < 0.3:
            g.add(Triple(f, CINEMATOGRAPHY, rng.choice(person_iris)))
        production = company_deck.draw()
        g.add(Triple(f, PRODUCTION, production))
        if rng.random() < 0.3:
            g.add(Triple(f, DISTRIBUTOR, company_deck.draw()))

        year = rng.randint(1930, 2023)
        genre = rng.choice(_GENRES)
        g.add(Triple(f, GENRE, lit(genre)))
        if rng.random() < 0.3:
            g.add(Triple(f, GENRE, lit(rng.choice(_GENRES) + " fiction")))
        if rng.random() < 0.9:
            g.add(Triple(f, RUNTIME, Literal(f"{rng.randint(4200, 12600)}.00", datatype=XSD_DOUBLE)))
        if rng.random() < 0.9:
            g.add(
                Triple(
                    f,
                    RELEASE_DATE,
                    Literal(f"{year}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}", datatype=XSD_DATE),
                )
            )
        if rng.random() < 0.35:
            g.add(Triple(f, BUDGET, Literal(f"{rng.randint(1, 300)}000000.00", datatype=XSD_DOUBLE)))
        if rng.random() < 0.35:
            g.add(Triple(f, GROSS, Literal(f"{rng.randint(1, 900)}000000.00", datatype=XSD_DOUBLE)))
        if rng.random() < 0.6:
            g.add(Triple(f, COUNTRY, lit(rng.choice(_COUNTRIES))))
        if rng.random() < 0.6:
            g.add(Triple(f, LANGUAGE, lit(rng.choice(_LANGUAGES))))
        if rng.random() < 0.75:
            g.add(Triple(f, IMDB_ID, lit(f"tt{rng.randint(1000000, 9999999)}")))
        director_label = person_labels[director]
        stars = ", ".join(person_labels[p] for p in cast[:3])
        g.add(
            Triple(
                f,
                ABSTRACT,
                lit(f"{label} is a {year} {genre} film directed by {director_label}, starring {stars}."),
            )
        )

    if triple_target is not None:
        if len(g) > triple_target:
            raise ValueError(f"organically generated {len(g)} triples, above target {triple_target}")
        filler = 0
        film_cycle = 0
        while len(g) < triple_target:
            filler += 1
            g.add(Triple(film_iris[film_cycle % films], GENRE, lit(f"genre-{filler:05d}")))
            film_cycle += 1
    return g

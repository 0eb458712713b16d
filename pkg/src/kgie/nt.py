"""N-Triples reading and writing.

Supports the line-oriented W3C N-Triples grammar restricted to IRIs and
literals: blank nodes are rejected with a parse error.  Input and output
are UTF-8; ``\\uXXXX`` and ``\\UXXXXXXXX`` escapes are decoded on parse and
re-emitted only for control characters on write, so serialized files stay
human-readable.

Serialization is canonical: one triple per line, sorted lexicographically,
which makes byte-identical output a pure function of the triple set.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable

from .rdf import Graph, Iri, Literal, ParseError, Term, Triple

_ECHAR_DECODE = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_ECHAR_ENCODE = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


class _LineScanner:
    """Single-line cursor with positioned error reporting."""

    def __init__(self, text: str, line_no: int) -> None:
        self.text = text
        self.pos = 0
        self.line_no = line_no

    def error(self, message: str) -> ParseError:
        return ParseError(message, line=self.line_no)

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def expect(self, char: str, what: str) -> None:
        if self.peek() != char:
            raise self.error(f"expected {what}")
        self.pos += 1

    def read_escape(self) -> str:
        # Cursor sits on the backslash.
        self.pos += 1
        if self.eof():
            raise self.error("dangling escape")
        kind = self.text[self.pos]
        self.pos += 1
        if kind in _ECHAR_DECODE:
            return _ECHAR_DECODE[kind]
        if kind in ("u", "U"):
            width = 4 if kind == "u" else 8
            digits = self.text[self.pos : self.pos + width]
            if len(digits) != width:
                raise self.error(f"\\{kind} escape needs {width} hex digits")
            try:
                code = int(digits, 16)
            except ValueError:
                raise self.error(f"invalid hex digits in \\{kind} escape") from None
            if code > 0x10FFFF:
                raise self.error("escape beyond Unicode range")
            self.pos += width
            return chr(code)
        raise self.error(f"unknown escape '\\{kind}'")

    def read_iri(self) -> Iri:
        self.expect("<", "'<' opening an IRI")
        out: list[str] = []
        while True:
            if self.eof():
                raise self.error("unterminated IRI")
            ch = self.text[self.pos]
            if ch == ">":
                self.pos += 1
                return Iri("".join(out))
            if ch == "\\":
                out.append(self.read_escape())
                continue
            if ch <= " " or ch in '<"{}|^`':
                raise self.error(f"character {ch!r} not allowed in IRI")
            out.append(ch)
            self.pos += 1

    def read_literal(self) -> Literal:
        self.expect('"', "'\"' opening a literal")
        out: list[str] = []
        while True:
            if self.eof():
                raise self.error("unterminated literal")
            ch = self.text[self.pos]
            if ch == '"':
                self.pos += 1
                break
            if ch == "\\":
                out.append(self.read_escape())
                continue
            out.append(ch)
            self.pos += 1
        lexical = "".join(out)
        if self.peek() == "@":
            self.pos += 1
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "-"
            ):
                self.pos += 1
            tag = self.text[start : self.pos]
            if not tag:
                raise self.error("empty language tag")
            return Literal(lexical, language=tag)
        if self.text[self.pos : self.pos + 2] == "^^":
            self.pos += 2
            return Literal(lexical, datatype=self.read_iri())
        return Literal(lexical)

    def read_term(self, allow_literal: bool) -> Term:
        ch = self.peek()
        if ch == "<":
            return self.read_iri()
        if ch == '"' and allow_literal:
            return self.read_literal()
        if self.text[self.pos : self.pos + 2] == "_:":
            raise self.error("blank nodes are not supported")
        raise self.error("expected an IRI" + (" or literal" if allow_literal else ""))


def parse_ntriples(text: str) -> Graph:
    """Parse N-Triples text into a graph; duplicates collapse.

    Raises :class:`ParseError` with a 1-based line number on malformed
    lines and on any blank node.
    """
    graph = Graph()
    # Only LF/CRLF/CR terminate lines; str.splitlines would also split on
    # characters like U+0085 and U+2028, which may appear raw inside literals.
    for line_no, raw in enumerate(re.split(r"\r\n|\r|\n", text), start=1):
        scanner = _LineScanner(raw, line_no)
        scanner.skip_ws()
        if scanner.eof() or scanner.peek() == "#":
            continue
        subject = scanner.read_term(allow_literal=False)
        scanner.skip_ws()
        predicate = scanner.read_term(allow_literal=False)
        scanner.skip_ws()
        obj = scanner.read_term(allow_literal=True)
        scanner.skip_ws()
        scanner.expect(".", "'.' terminating the triple")
        scanner.skip_ws()
        if not scanner.eof() and scanner.peek() != "#":
            raise scanner.error("trailing content after '.'")
        graph.add(Triple(subject, predicate, obj))  # type: ignore[arg-type]
    return graph


def _escape_text(value: str) -> str:
    out: list[str] = []
    for ch in value:
        if ch in _ECHAR_ENCODE:
            out.append(_ECHAR_ENCODE[ch])
        elif ch < " ":
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _render_term(term: Term) -> str:
    if isinstance(term, Iri):
        return f"<{_escape_text(term.value)}>"
    rendered = f'"{_escape_text(term.lexical)}"'
    if term.language is not None:
        return f"{rendered}@{term.language}"
    if term.datatype is not None:
        return f"{rendered}^^<{_escape_text(term.datatype.value)}>"
    return rendered


def render_triple(triple: Triple) -> str:
    return (
        f"{_render_term(triple.subject)} "
        f"{_render_term(triple.predicate)} "
        f"{_render_term(triple.object)} ."
    )


def serialize_ntriples(graph: Graph | Iterable[Triple]) -> str:
    """Canonical N-Triples text: sorted lines, trailing newline if non-empty."""
    lines = sorted(render_triple(t) for t in graph)
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def load_graph(path: str | Path) -> Graph:
    return parse_ntriples(Path(path).read_text(encoding="utf-8"))


def save_graph(graph: Graph, path: str | Path) -> None:
    Path(path).write_text(serialize_ntriples(graph), encoding="utf-8")

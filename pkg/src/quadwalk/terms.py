"""RDF terms and quads.

A statement is a four-tuple: subject, predicate, object, graph.  Subjects and
graphs are IRIs or blank nodes, predicates are IRIs, objects may additionally
be literals.  The graph component names the user or provider who asserted the
statement.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .namespaces import RDF, XSD

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_BLANK_LABEL_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._\-]*$")


class TermError(ValueError):
    """Malformed term (relative IRI, bad blank label, ...)."""


class QuadPositionError(ValueError):
    """A term appears in a quad position its kind is not allowed to occupy."""


@dataclass(frozen=True, slots=True)
class Term:
    """Base class for IRI, BlankNode, and Literal."""

    def nq(self) -> str:
        raise NotImplementedError

    def sort_key(self) -> str:
        return self.nq()


@dataclass(frozen=True, slots=True)
class IRI(Term):
    value: str

    def __post_init__(self):
        if not _SCHEME_RE.match(self.value):
            raise TermError(f"IRI must be absolute (have a scheme): {self.value!r}")
        if any(c in self.value for c in ' <>"{}|^`\\'):
            raise TermError(f"IRI contains characters outlawed in N-Quads: {self.value!r}")

    def nq(self) -> str:
        return f"<{self.value}>"


@dataclass(frozen=True, slots=True)
class BlankNode(Term):
    label: str

    def __post_init__(self):
        if not _BLANK_LABEL_RE.match(self.label):
            raise TermError(f"bad blank node label: {self.label!r}")

    def nq(self) -> str:
        return f"_:{self.label}"


_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


@dataclass(frozen=True, slots=True)
class Literal(Term):
    lexical: str
    datatype: str = field(default=XSD.string)
    lang: str | None = None

    def __post_init__(self):
        if self.lang is not None:
            # RDF 1.1: language-tagged strings carry rdf:langString.
            object.__setattr__(self, "datatype", RDF.langString)

    def nq(self) -> str:
        quoted = "".join(_ESCAPES.get(c, c) for c in self.lexical)
        if self.lang is not None:
            return f'"{quoted}"@{self.lang}'
        if self.datatype == XSD.string:
            return f'"{quoted}"'
        return f'"{quoted}"^^<{self.datatype}>'


@dataclass(frozen=True, slots=True)
class Quad:
    s: Term
    p: Term
    o: Term
    g: Term

    def __post_init__(self):
        if isinstance(self.s, Literal):
            raise QuadPositionError(f"literal in subject position: {self.s.nq()}")
        if not isinstance(self.p, IRI):
            raise QuadPositionError(f"predicate must be an IRI: {self.p.nq()}")
        if isinstance(self.g, Literal):
            raise QuadPositionError(f"literal in graph position: {self.g.nq()}")
        if not isinstance(self.o, Term):
            raise QuadPositionError(f"object is not a term: {self.o!r}")

    def nq(self) -> str:
        return f"{self.s.nq()} {self.p.nq()} {self.o.nq()} {self.g.nq()} ."

    def sort_key(self) -> tuple[str, str, str, str]:
        return (self.s.sort_key(), self.p.sort_key(), self.o.sort_key(), self.g.sort_key())


# Literal constructors for the datatypes the schema actually uses.

def string_literal(value: str) -> Literal:
    return Literal(value)


def float_literal(value: float) -> Literal:
    return Literal(repr(float(value)), XSD.float)


def int_literal(value: int) -> Literal:
    return Literal(str(int(value)), XSD.int)


def anyuri_literal(value: str) -> Literal:
    return Literal(value, XSD.anyURI)


def datetime_literal(value: datetime) -> Literal:
    if value.tzinfo is None:
        value = value.replace(tzinfo=timezone.utc)
    value = value.astimezone(timezone.utc)
    text = value.isoformat()
    if text.endswith("+00:00"):
        text = text[:-6] + "Z"
    return Literal(text, XSD.dateTime)


def parse_datetime(lexical: str) -> datetime:
    text = lexical.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    parsed = datetime.fromisoformat(text)
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed

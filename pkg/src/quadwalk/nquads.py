"""Line-based N-Quads 1.1 reader and writer.

One statement per line, terminating period, UTF-8.  Statements without a
graph label are placed in the caller-supplied default graph.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from .terms import IRI, BlankNode, Literal, Quad, Term


class NQuadsParseError(ValueError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_BLANK_RE = re.compile(r"([A-Za-z0-9_][A-Za-z0-9._\-]*)")  # label; '_:' consumed upstream
_LANG_RE = re.compile(r"@([a-zA-Z]+(?:-[a-zA-Z0-9]+)*)")


class _LineScanner:
    """Hand-rolled scanner; regex alone cannot handle nested escapes cleanly."""

    def __init__(self, text: str, line_no: int):
        self.text = text
        self.pos = 0
        self.line_no = line_no

    def error(self, reason: str) -> NQuadsParseError:
        return NQuadsParseError(self.line_no, f"{reason} (column {self.pos + 1})")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _unescape_to(self, terminator: str, allow_echar: bool) -> str:
        out: list[str] = []
        while True:
            if self.at_end():
                raise self.error(f"unterminated token, expected {terminator!r}")
            c = self.text[self.pos]
            self.pos += 1
            if c == terminator:
                return "".join(out)
            if c == "\\":
                if self.at_end():
                    raise self.error("dangling escape")
                e = self.text[self.pos]
                self.pos += 1
                if e == "u" or e == "U":
                    width = 4 if e == "u" else 8
                    hexs = self.text[self.pos : self.pos + width]
                    if len(hexs) != width or not all(h in "0123456789abcdefABCDEF" for h in hexs):
                        raise self.error(f"bad \\{e} escape")
                    self.pos += width
                    out.append(chr(int(hexs, 16)))
                elif allow_echar and e in _ECHAR:
                    out.append(_ECHAR[e])
                else:
                    raise self.error(f"bad escape \\{e}")
            else:
                out.append(c)

    def read_iri(self) -> IRI:
        if self.peek() != "<":
            raise self.error("expected '<'")
        self.pos += 1
        value = self._unescape_to(">", allow_echar=False)
        try:
            return IRI(value)
        except ValueError as exc:
            raise self.error(str(exc)) from exc

    def read_blank(self) -> BlankNode:
        m = _BLANK_RE.match(self.text, self.pos)
        if not m:
            raise self.error("expected blank node label after '_:'")
        self.pos = m.end()
        # Leading-underscore labels are legal N-Quads but not store labels;
        # prefix them so BlankNode validation passes.
        label = m.group(1)
        if label.startswith("_"):
            label = "u" + label
        return BlankNode(label)

    def read_literal(self) -> Literal:
        self.pos += 1  # consume the opening quote
        lexical = self._unescape_to('"', allow_echar=True)
        if self.peek() == "@":
            m = _LANG_RE.match(self.text, self.pos)
            if not m:
                raise self.error("bad language tag")
            self.pos = m.end()
            return Literal(lexical, lang=m.group(1))
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            dtype = self.read_iri()
            return Literal(lexical, dtype.value)
        return Literal(lexical)

    def read_term(self, *, allow_literal: bool) -> Term:
        c = self.peek()
        if c == "<":
            return self.read_iri()
        if self.text.startswith("_:", self.pos):
            self.pos += 2
            return self.read_blank()
        if c == '"' and allow_literal:
            return self.read_literal()
        raise self.error(f"unexpected character {c!r}")


def parse_nquads(data: bytes | str, default_graph: IRI) -> Iterator[Quad]:
    """Yield quads from N-Quads text; raises NQuadsParseError with a line number."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    # Split on real newlines only: str.splitlines would also break on
    # control characters (\x1c-\x1e, \x85, ...) that are legal inside literals.
    for line_no, raw in enumerate(data.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        sc = _LineScanner(raw, line_no)
        sc.skip_ws()
        s = sc.read_term(allow_literal=False)
        sc.skip_ws()
        if sc.peek() != "<":
            raise sc.error("predicate must be an IRI")
        p = sc.read_iri()
        sc.skip_ws()
        o = sc.read_term(allow_literal=True)
        sc.skip_ws()
        g: Term = default_graph
        if sc.peek() not in (".", ""):
            g = sc.read_term(allow_literal=False)
            sc.skip_ws()
        if sc.peek() != ".":
            raise sc.error("missing terminating '.'")
        sc.pos += 1
        sc.skip_ws()
        if not sc.at_end() and sc.peek() != "#":
            raise sc.error("trailing content after '.'")
        try:
            yield Quad(s, p, o, g)
        except ValueError as exc:
            raise NQuadsParseError(line_no, str(exc)) from exc


def serialize_nquads(quads: Iterable[Quad]) -> bytes:
    """Serialize quads one per line, deduplicated and sorted for stable output."""
    lines = sorted({q.nq() for q in quads})
    body = "\n".join(lines)
    if body:
        body += "\n"
    return body.encode("utf-8")

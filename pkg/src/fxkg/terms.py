"""Graph atoms: terms and triples.

A :class:`Term` is an IRI, a literal or a blank node.  Every term has a
canonical text form (N-Triples style) that is used for ordering and that
round-trips through :meth:`Term.from_text`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import InvalidTriple, MalformedIRI

IRI = "iri"
LITERAL = "literal"
BLANK = "blank"

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"

# characters forbidden in IRIREF besides whitespace
_IRI_FORBIDDEN = set('<>"{}|^`\\')
_BLANK_LABEL = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_-]*\Z")

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {"\\": "\\", '"': '"', "'": "'", "n": "\n", "r": "\r", "t": "\t",
              "b": "\b", "f": "\f"}


def check_iri(text: str) -> str:
    if not text:
        raise MalformedIRI("IRI is empty")
    if ":" not in text:
        raise MalformedIRI(f"IRI has no scheme separator: {text!r}")
    for ch in text:
        if ch.isspace() or ch in _IRI_FORBIDDEN or ord(ch) < 0x20:
            raise MalformedIRI(f"IRI contains illegal character {ch!r}: {text!r}")
    return text


def escape_string(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def unescape_string(body: str) -> str:
    """Decode backslash escapes of a quoted string body (quotes removed)."""
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= len(body):
            raise ValueError("dangling backslash")
        nxt = body[i + 1]
        if nxt in _UNESCAPES:
            out.append(_UNESCAPES[nxt])
            i += 2
        elif nxt in "uU":
            width = 4 if nxt == "u" else 8
            digits = body[i + 2:i + 2 + width]
            if len(digits) != width or not all(c in "0123456789abcdefABCDEF" for c in digits):
                raise ValueError(f"bad \\{nxt} escape")
            out.append(chr(int(digits, 16)))
            i += 2 + width
        else:
            raise ValueError(f"unknown escape \\{nxt}")
    return "".join(out)


@dataclass(frozen=True)
class Term:
    kind: str
    value: str
    datatype: Optional[str] = None
    text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind == IRI:
            check_iri(self.value)
            if self.datatype is not None:
                raise ValueError("IRIs carry no datatype")
            text = f"<{self.value}>"
        elif self.kind == LITERAL:
            if not isinstance(self.value, str):
                raise TypeError("literal lexical form must be a string")
            text = f'"{escape_string(self.value)}"'
            if self.datatype is not None:
                check_iri(self.datatype)
                text += f"^^<{self.datatype}>"
        elif self.kind == BLANK:
            if not _BLANK_LABEL.match(self.value or ""):
                raise ValueError(f"bad blank node label: {self.value!r}")
            if self.datatype is not None:
                raise ValueError("blank nodes carry no datatype")
            text = f"_:{self.value}"
        else:
            raise ValueError(f"unknown term kind: {self.kind!r}")
        object.__setattr__(self, "text", text)

    def __str__(self):
        return self.text

    def __lt__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        return self.text < other.text

    @property
    def is_iri(self):
        return self.kind == IRI

    @property
    def is_literal(self):
        return self.kind == LITERAL

    @property
    def is_blank(self):
        return self.kind == BLANK

    def local_name(self) -> str:
        """The part of an IRI after the last ``#`` or ``/``."""
        if self.kind != IRI:
            return self.value
        v = self.value
        cut = max(v.rfind("#"), v.rfind("/"))
        return v[cut + 1:] if cut >= 0 and cut + 1 < len(v) else v

    @classmethod
    def from_text(cls, text: str) -> "Term":
        """Inverse of :attr:`text`."""
        if text.startswith("<") and text.endswith(">"):
            return iri(text[1:-1])
        if text.startswith("_:"):
            return blank(text[2:])
        if text.startswith('"'):
            m = re.fullmatch(r'"((?:[^"\\]|\\.)*)"(?:\^\^<([^>]*)>)?', text, re.S)
            if m:
                return literal(unescape_string(m.group(1)), m.group(2))
        raise ValueError(f"not a canonical term: {text!r}")


def iri(value: str) -> Term:
    return Term(IRI, value)


def literal(value: str, datatype: Optional[str] = None) -> Term:
    return Term(LITERAL, value, datatype)


def blank(label: str) -> Term:
    return Term(BLANK, label)


def make_iri(namespace: str, local: str) -> Term:
    if not namespace:
        raise MalformedIRI("empty namespace")
    if not local or any(ch.isspace() for ch in local):
        raise MalformedIRI(f"bad local name: {local!r}")
    return iri(namespace + local)


class Triple(NamedTuple):
    subject: Term
    predicate: Term
    object: Term

    @property
    def sort_key(self):
        return (self.subject.text, self.predicate.text, self.object.text)

    def __str__(self):
        return f"{self.subject.text} {self.predicate.text} {self.object.text} ."


def triple(s: Term, p: Term, o: Term) -> Triple:
    """Build a triple, enforcing position constraints."""
    check_triple(Triple(s, p, o))
    return Triple(s, p, o)


def check_triple(t) -> None:
    if len(t) != 3 or not all(isinstance(x, Term) for x in t):
        raise InvalidTriple(f"not a triple of terms: {t!r}")
    s, p, _ = t
    if s.kind == LITERAL:
        raise InvalidTriple(f"literal in subject position: {s.text}")
    if p.kind != IRI:
        raise InvalidTriple(f"predicate must be an IRI: {p.text}")


RDF_TYPE = iri(RDF + "type")
RDFS_LABEL = iri(RDFS + "label")
RDFS_COMMENT = iri(RDFS + "comment")
RDFS_SUBCLASS_OF = iri(RDFS + "subClassOf")
XSD_STRING = XSD + "string"

STANDARD_PREFIXES = {"rdf": RDF, "rdfs": RDFS, "xsd": XSD}

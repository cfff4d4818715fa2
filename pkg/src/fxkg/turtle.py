"""Reader and writer for the Turtle subset described in FORMAT.md."""

from __future__ import annotations

import re
from typing import Iterable, List, Mapping, Optional

from .errors import InvalidTriple, MalformedIRI, ParseError, UnknownPrefix, UnterminatedLiteral
from .schema import PREDICATE_ALIASES, default_base
from .terms import (RDF_TYPE, Term, Triple, blank, check_triple, escape_string, iri,
                    literal, unescape_string)

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<iri><[^<>"{}|^`\\\s]*>)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<blank>_:[A-Za-z0-9_][A-Za-z0-9_-]*)
  | (?P<directive>@prefix\b|PREFIX\b)
  | (?P<pname>(?:[A-Za-z][A-Za-z0-9_-]*)?:(?:[A-Za-z0-9_](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?)?)
  | (?P<a>a(?=[\s<"_:]))
  | (?P<punct>\^\^|[.;,])
""", re.X)

_LOCAL_SAFE = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*\Z")


class _Reader:
    def __init__(self, text: str, base: str):
        if text.startswith("﻿"):
            text = text[1:]
        self.text = text
        self.pos = 0
        self.line = 1
        self.line_start = 0
        self.prefixes = {}
        self.aliases = {iri(base + k): iri(base + v) for k, v in PREDICATE_ALIASES.items()}
        self._peeked = None

    def _scan(self):
        text, n = self.text, len(self.text)
        while self.pos < n:
            col = self.pos - self.line_start + 1
            m = _TOKEN.match(text, self.pos)
            if m is None:
                if text[self.pos] == '"':
                    raise UnterminatedLiteral("unterminated string literal", self.line, col)
                raise ParseError(f"unexpected character {text[self.pos]!r}", self.line, col)
            tok = m.group()
            kind = m.lastgroup
            line = self.line
            nl = tok.count("\n")
            if nl:
                self.line += nl
                self.line_start = self.pos + tok.rfind("\n") + 1
            self.pos = m.end()
            if kind != "ws":
                return kind, tok, line, col
        return "eof", "", self.line, self.pos - self.line_start + 1

    def peek(self):
        if self._peeked is None:
            self._peeked = self._scan()
        return self._peeked

    def next(self):
        tok = self.peek()
        self._peeked = None
        return tok

    def fail(self, expected, tok):
        kind, text, line, col = tok
        found = "end of input" if kind == "eof" else repr(text)
        return ParseError(f"expected {expected}, found {found}", line, col)

    def expect_dot(self):
        tok = self.next()
        if tok[:2] != ("punct", "."):
            raise self.fail("'.'", tok)

    def iri_value(self, tok):
        kind, text, line, col = tok
        try:
            if kind == "iri":
                return iri(text[1:-1])
            prefix, _, local = text.partition(":")
            if prefix not in self.prefixes:
                raise UnknownPrefix(f"unknown prefix {prefix + ':'!r}", line, col)
            return iri(self.prefixes[prefix] + local)
        except MalformedIRI as exc:
            raise ParseError(str(exc), line, col) from None

    def term(self, tok, position):
        kind, text, line, col = tok
        if kind in ("iri", "pname"):
            return self.iri_value(tok)
        if kind == "blank" and position != "predicate":
            return blank(text[2:])
        if kind == "a" and position == "predicate":
            return RDF_TYPE
        if kind == "string" and position == "object":
            try:
                body = unescape_string(text[1:-1])
            except ValueError as exc:
                raise ParseError(str(exc), line, col) from None
            datatype = None
            if self.peek()[:2] == ("punct", "^^"):
                self.next()
                dt = self.next()
                if dt[0] not in ("iri", "pname"):
                    raise self.fail("datatype IRI after '^^'", dt)
                datatype = self.iri_value(dt).value
            return literal(body, datatype)
        raise self.fail(position, tok)

    def parse(self) -> List[Triple]:
        out = []
        while True:
            tok = self.next()
            kind = tok[0]
            if kind == "eof":
                return out
            if kind == "directive":
                name = self.next()
                if name[0] != "pname" or not name[1].endswith(":") or name[1].count(":") != 1:
                    raise self.fail("prefix name like 'fx:'", name)
                target = self.next()
                if target[0] != "iri":
                    raise self.fail("'<namespace-iri>'", target)
                self.prefixes[name[1][:-1]] = self.iri_value(target).value
                if tok[1] == "@prefix":
                    self.expect_dot()
                continue
            subject = self.term(tok, "subject")
            self.predicate_objects(subject, out)

    def predicate_objects(self, subject, out):
        while True:
            predicate = self.term(self.next(), "predicate")
            predicate = self.aliases.get(predicate, predicate)
            while True:
                obj = self.term(self.next(), "object")
                out.append(Triple(subject, predicate, obj))
                sep = self.next()
                if sep[:2] == ("punct", ","):
                    continue
                break
            if sep[:2] == ("punct", "."):
                return
            if sep[:2] == ("punct", ";"):
                # a trailing ';' before '.' is legal
                if self.peek()[:2] == ("punct", "."):
                    self.next()
                    return
                continue
            raise self.fail("',', ';' or '.'", sep)


def parse_turtle(text: str, base: Optional[str] = None) -> List[Triple]:
    """Parse a Turtle document into triples, in document order.

    ``teachesInProgram`` in namespace ``base`` is normalized to ``teachesIn``.
    """
    return _Reader(text, base or default_base()).parse()


def _compact(term: Term, prefixes) -> str:
    if term.is_iri:
        best = None
        for p, ns in prefixes:
            if term.value.startswith(ns):
                local = term.value[len(ns):]
                if _LOCAL_SAFE.match(local) and (best is None or len(ns) > len(best[1])):
                    best = (p, ns, local)
        if best is not None:
            return f"{best[0]}:{best[2]}"
        return term.text
    if term.is_literal:
        out = f'"{escape_string(term.value)}"'
        if term.datatype is not None:
            out += "^^" + _compact(iri(term.datatype), prefixes)
        return out
    return term.text


def write_turtle(triples: Iterable[Triple], prefixes: Optional[Mapping[str, str]] = None) -> str:
    """Serialize deterministically: subjects, predicates and objects sorted by
    canonical text, predicates grouped with ``;`` and objects with ``,``."""
    prefixes = sorted((prefixes or {}).items())
    lines = [f"@prefix {p}: <{ns}> ." for p, ns in prefixes]
    by_subject = {}
    for t in set(triples):
        check_triple(t)
        by_subject.setdefault(t.subject, {}).setdefault(t.predicate, []).append(t.object)
    if lines and by_subject:
        lines.append("")
    for s in sorted(by_subject):
        preds = by_subject[s]
        parts = []
        for p in sorted(preds):
            ptext = "a" if p == RDF_TYPE else _compact(p, prefixes)
            objs = ", ".join(_compact(o, prefixes) for o in sorted(preds[p]))
            parts.append(f"{ptext} {objs}")
        head = _compact(s, prefixes) + " "
        indent = " " * 4
        lines.append(head + (" ;\n" + indent).join(parts) + " .")
    return "\n".join(lines) + ("\n" if lines else "")


__all__ = ["parse_turtle", "write_turtle", "InvalidTriple"]

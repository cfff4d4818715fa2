"""Recursive-descent parser for the SELECT query language.

See QUERYLANG.md for the grammar.  Errors carry 1-based line/column.
"""

from __future__ import annotations

import re
from typing import Dict, List, Mapping, NamedTuple, Optional

from ..errors import (MalformedIRI, ParseError, UnboundFilterVariable,
                      UnknownPrefix, UnterminatedLiteral)
from ..terms import RDF_TYPE, Term, iri, literal, unescape_string
from .ast import FilterExpr, GroupPattern, OrderBy, PatternTriple, QueryAst, Var

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n﻿]+|\#[^\n]*)
  | (?P<iri><[^<>"{}|^`\\\s]*>)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<var>\?[A-Za-z_][A-Za-z0-9_]*)
  | (?P<pname>(?:[A-Za-z][A-Za-z0-9_-]*)?:(?:[A-Za-z0-9_](?:[A-Za-z0-9_.-]*[A-Za-z0-9_-])?)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<punct>!=|\^\^|[{}().;,*=])
""", re.X)

KEYWORDS = {"PREFIX", "SELECT", "DISTINCT", "WHERE", "FILTER", "OPTIONAL", "UNION",
            "ORDER", "BY", "ASC", "DESC", "LIMIT", "CONTAINS", "REGEX"}


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int

    def describe(self):
        if self.kind == "eof":
            return "end of input"
        return repr(self.text)


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            if text[pos] == '"':
                raise UnterminatedLiteral("unterminated string literal", line, col)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind != "ws":
            if kind == "name" and tok.upper() in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, tok, line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            line_start = pos + tok.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, prefixes: Optional[Mapping[str, str]]):
        self.toks = tokenize(text)
        self.i = 0
        self.preset = dict(prefixes or {})
        self.declared: Dict[str, str] = {}
        self.filter_tokens = {}

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, expected, tok=None):
        tok = tok or self.tok
        return ParseError(f"expected {expected}, found {tok.describe()}", tok.line, tok.col)

    def at_kw(self, *words):
        return self.tok.kind == "kw" and self.tok.text.upper() in words

    def at_punct(self, *chars):
        return self.tok.kind == "punct" and self.tok.text in chars

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect_kw(self, word):
        if not self.at_kw(word):
            raise self.error(word)
        return self.advance()

    def expect_punct(self, ch):
        if not self.at_punct(ch):
            raise self.error(repr(ch))
        return self.advance()

    # grammar
    def query(self) -> QueryAst:
        while self.at_kw("PREFIX"):
            self.prefix_decl()
        self.expect_kw("SELECT")
        distinct = False
        if self.at_kw("DISTINCT"):
            self.advance()
            distinct = True
        if self.at_punct("*"):
            self.advance()
            projection = None
        else:
            projection = []
            while self.tok.kind == "var":
                projection.append(Var(self.advance().text[1:]))
            if not projection:
                raise self.error("'?variable' or '*' in SELECT")
            projection = tuple(projection)
        where_tok = self.expect_kw("WHERE")
        pattern = self.group()
        self.check_scope(pattern)
        order_by = None
        if self.at_kw("ORDER"):
            order_tok = self.advance()
            self.expect_kw("BY")
            if self.at_kw("ASC", "DESC"):
                desc = self.advance().text.upper() == "DESC"
                self.expect_punct("(")
                var = self.variable()
                self.expect_punct(")")
            else:
                desc = False
                var = self.variable()
            order_by = OrderBy(var, desc)
        limit = None
        if self.at_kw("LIMIT"):
            self.advance()
            if self.tok.kind != "int":
                raise self.error("a positive integer after LIMIT")
            tok = self.advance()
            limit = int(tok.text)
            if limit < 1:
                raise ParseError("LIMIT must be positive", tok.line, tok.col)
        if self.tok.kind != "eof":
            raise self.error("end of query")

        bound = pattern.all_variables()
        names = [v.name for v in projection] if projection is not None else bound
        for name in ([v.name for v in projection] if projection else []):
            if name not in bound:
                raise ParseError(f"projected variable ?{name} does not appear in the pattern",
                                 where_tok.line, where_tok.col)
        if order_by is not None and order_by.var.name not in names:
            raise ParseError(f"ORDER BY variable ?{order_by.var.name} is not projected",
                             order_tok.line, order_tok.col)
        return QueryAst(projection, pattern, distinct, order_by, limit,
                        tuple(sorted(self.declared.items())))

    def prefix_decl(self):
        self.advance()
        tok = self.tok
        if tok.kind != "pname" or not tok.text.endswith(":") or tok.text.count(":") != 1:
            raise self.error("prefix name like 'fx:'")
        self.advance()
        target = self.iri_ref()
        self.declared[tok.text[:-1]] = target.value

    def iri_ref(self) -> Term:
        tok = self.tok
        if tok.kind != "iri":
            raise self.error("'<iri>'")
        self.advance()
        try:
            return iri(tok.text[1:-1])
        except MalformedIRI as exc:
            raise ParseError(str(exc), tok.line, tok.col) from None

    def variable(self) -> Var:
        if self.tok.kind != "var":
            raise self.error("'?variable'")
        return Var(self.advance().text[1:])

    def resolve_pname(self, tok: Token) -> Term:
        prefix, _, local = tok.text.partition(":")
        ns = self.declared.get(prefix, self.preset.get(prefix))
        if ns is None:
            raise UnknownPrefix(f"unknown prefix {prefix + ':'!r}", tok.line, tok.col)
        try:
            return iri(ns + local)
        except MalformedIRI as exc:
            raise ParseError(str(exc), tok.line, tok.col) from None

    def iri_term(self) -> Optional[Term]:
        if self.tok.kind == "iri":
            return self.iri_ref()
        if self.tok.kind == "pname":
            return self.resolve_pname(self.advance())
        return None

    def literal_term(self) -> Term:
        tok = self.advance()
        try:
            body = unescape_string(tok.text[1:-1])
        except ValueError as exc:
            raise ParseError(str(exc), tok.line, tok.col) from None
        datatype = None
        if self.at_punct("^^"):
            self.advance()
            dt = self.iri_term()
            if dt is None:
                raise self.error("datatype IRI after '^^'")
            datatype = dt.value
        return literal(body, datatype)

    def subject_node(self):
        if self.tok.kind == "var":
            return self.variable()
        term = self.iri_term()
        if term is None:
            raise self.error("subject (variable or IRI)")
        return term

    def predicate_node(self):
        if self.tok.kind == "var":
            return self.variable()
        if self.tok.kind == "name" and self.tok.text == "a":
            self.advance()
            return RDF_TYPE
        term = self.iri_term()
        if term is None:
            raise self.error("predicate (variable, IRI or 'a')")
        return term

    def object_node(self):
        if self.tok.kind == "var":
            return self.variable()
        if self.tok.kind == "string":
            return self.literal_term()
        term = self.iri_term()
        if term is None:
            raise self.error("object (variable, IRI or literal)")
        return term

    def group(self) -> GroupPattern:
        self.expect_punct("{")
        triples, filters, optionals, unions = [], [], [], []
        while not self.at_punct("}"):
            if self.at_kw("FILTER"):
                tok = self.tok
                f = self.filter_expr()
                self.filter_tokens[id(f)] = tok
                filters.append(f)
            elif self.at_kw("OPTIONAL"):
                self.advance()
                optionals.append(self.group())
            elif self.at_punct("{"):
                left = self.group()
                if not self.at_kw("UNION"):
                    raise self.error("UNION after '{...}'")
                while True:
                    self.advance()
                    pair = (left, self.group())
                    if not self.at_kw("UNION"):
                        break
                    left = GroupPattern(unions=(pair,))
                unions.append(pair)
            elif self.tok.kind in ("var", "iri", "pname"):
                self.triples_block(triples)
                continue
            elif self.tok.kind == "eof":
                raise self.error("'}'")
            else:
                raise self.error("triple pattern, FILTER, OPTIONAL, '{' or '}'")
            if self.at_punct("."):
                self.advance()
        self.advance()
        return GroupPattern(tuple(triples), tuple(filters), tuple(optionals), tuple(unions))

    def check_scope(self, gp: GroupPattern, outer=frozenset()):
        scope = set(outer) | set(gp.all_variables())
        for f in gp.filters:
            for name in f.variables():
                if name not in scope:
                    tok = self.filter_tokens[id(f)]
                    raise UnboundFilterVariable(
                        f"filter variable ?{name} is not bound by any triple pattern in scope",
                        tok.line, tok.col)
        for left, right in gp.unions:
            self.check_scope(left, scope)
            self.check_scope(right, scope)
        for opt in gp.optionals:
            self.check_scope(opt, scope)

    def triples_block(self, triples):
        subject = self.subject_node()
        while True:
            predicate = self.predicate_node()
            while True:
                triples.append(PatternTriple(subject, predicate, self.object_node()))
                if not self.at_punct(","):
                    break
                self.advance()
            if not self.at_punct(";"):
                break
            self.advance()
            if self.at_punct(".", "}"):
                break
        if self.at_punct("."):
            self.advance()
        elif not self.at_punct("}") and not self.at_kw("FILTER", "OPTIONAL") \
                and not self.at_punct("{"):
            raise self.error("'.', ';', ',' or '}' after triple pattern")

    def filter_expr(self) -> FilterExpr:
        self.advance()
        self.expect_punct("(")
        if self.at_kw("CONTAINS", "REGEX"):
            op = self.advance().text.lower()
            self.expect_punct("(")
            left = self.variable()
            self.expect_punct(",")
            right = self.operand()
            self.expect_punct(")")
        else:
            left = self.variable()
            if self.at_punct("="):
                op = "eq"
            elif self.at_punct("!="):
                op = "neq"
            else:
                raise self.error("'=' or '!='")
            self.advance()
            right = self.operand()
        self.expect_punct(")")
        return FilterExpr(op, left, right)

    def operand(self):
        if self.tok.kind == "var":
            return self.variable()
        if self.tok.kind == "string":
            return self.literal_term()
        term = self.iri_term()
        if term is None:
            raise self.error("variable, literal or IRI")
        return term


def parse_query(text: str, prefixes: Optional[Mapping[str, str]] = None) -> QueryAst:
    """Parse query text.  ``prefixes`` are predeclared and need no PREFIX line."""
    return _Parser(text, prefixes).query()

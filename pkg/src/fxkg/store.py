"""In-memory triple store with SPO / POS / OSP indexes."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator, List, NamedTuple, Optional

from .errors import InvalidTriple
from .terms import IRI, LITERAL, Term, Triple, check_triple


class TriplePattern(NamedTuple):
    """A triple with optional positions; ``None`` is the wildcard."""

    subject: Optional[Term] = None
    predicate: Optional[Term] = None
    object: Optional[Term] = None

    def matches(self, t: Triple) -> bool:
        return ((self.subject is None or self.subject == t.subject)
                and (self.predicate is None or self.predicate == t.predicate)
                and (self.object is None or self.object == t.object))


def _nested():
    return defaultdict(lambda: defaultdict(set))


def _drop(index, a, b, c):
    inner = index[a]
    bucket = inner[b]
    bucket.discard(c)
    if not bucket:
        del inner[b]
        if not inner:
            del index[a]


class Graph:
    """A set of triples indexed three ways.

    Mutation requires exclusive access; concurrent readers are fine while
    nothing mutates.
    """

    def __init__(self, triples: Iterable[Triple] = ()):
        self._spo = _nested()
        self._pos = _nested()
        self._osp = _nested()
        self._size = 0
        for t in triples:
            self.insert(t)

    def __len__(self):
        return self._size

    def __contains__(self, t) -> bool:
        s, p, o = t
        inner = self._spo.get(s)
        if inner is None:
            return False
        bucket = inner.get(p)
        return bucket is not None and o in bucket

    def __iter__(self) -> Iterator[Triple]:
        for s, inner in self._spo.items():
            for p, objs in inner.items():
                for o in objs:
                    yield Triple(s, p, o)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return len(self) == len(other) and all(t in other for t in self)

    def __repr__(self):
        return f"<Graph with {self._size} triples>"

    def copy(self) -> "Graph":
        return Graph(self)

    def insert(self, t) -> bool:
        check_triple(t)
        t = Triple(*t)
        if t in self:
            return False
        s, p, o = t
        self._spo[s][p].add(o)
        self._pos[p][o].add(s)
        self._osp[o][s].add(p)
        self._size += 1
        return True

    def update(self, triples: Iterable[Triple]) -> int:
        return sum(self.insert(t) for t in triples)

    def remove(self, t) -> bool:
        if t not in self:
            return False
        s, p, o = t
        _drop(self._spo, s, p, o)
        _drop(self._pos, p, o, s)
        _drop(self._osp, o, s, p)
        self._size -= 1
        return True

    def triples(self, s=None, p=None, o=None) -> Iterator[Triple]:
        """Unordered iteration over matching triples (wildcards are ``None``)."""
        if s is not None:
            inner = self._spo.get(s)
            if not inner:
                return
            if p is not None:
                objs = inner.get(p, ())
                if o is not None:
                    if o in objs:
                        yield Triple(s, p, o)
                    return
                for obj in objs:
                    yield Triple(s, p, obj)
            elif o is not None:
                for pred in self._osp.get(o, {}).get(s, ()):
                    yield Triple(s, pred, o)
            else:
                for pred, objs in inner.items():
                    for obj in objs:
                        yield Triple(s, pred, obj)
        elif p is not None:
            inner = self._pos.get(p)
            if not inner:
                return
            if o is not None:
                for subj in inner.get(o, ()):
                    yield Triple(subj, p, o)
            else:
                for obj, subjs in inner.items():
                    for subj in subjs:
                        yield Triple(subj, p, obj)
        elif o is not None:
            for subj, preds in self._osp.get(o, {}).items():
                for pred in preds:
                    yield Triple(subj, pred, o)
        else:
            yield from self

    def count(self, s=None, p=None, o=None) -> int:
        if s is None and p is None and o is None:
            return self._size
        if s is None and o is None:
            return sum(len(v) for v in self._pos.get(p, {}).values())
        if s is not None and p is not None and o is None:
            return len(self._spo.get(s, {}).get(p, ()))
        if p is not None and o is not None and s is None:
            return len(self._pos.get(p, {}).get(o, ()))
        return sum(1 for _ in self.triples(s, p, o))

    def match_pattern(self, pattern: TriplePattern) -> List[Triple]:
        """Matching triples in canonical-text order."""
        if pattern.predicate is not None and pattern.predicate.kind != IRI:
            return []
        if pattern.subject is not None and pattern.subject.kind == LITERAL:
            return []
        return sorted(self.triples(*pattern), key=lambda t: t.sort_key)

    def objects(self, s, p) -> List[Term]:
        return sorted(self._spo.get(s, {}).get(p, ()))

    def subjects(self, p, o) -> List[Term]:
        return sorted(self._pos.get(p, {}).get(o, ()))

    def value(self, s, p) -> Optional[Term]:
        objs = self.objects(s, p)
        return objs[0] if objs else None

    def has_subject(self, s) -> bool:
        return s in self._spo

    def subject_terms(self):
        return self._spo.keys()

    def sorted_triples(self) -> List[Triple]:
        return sorted(self, key=lambda t: t.sort_key)

    def index_views(self):
        """The triple set as seen by each index; used by consistency checks."""
        spo = {Triple(s, p, o) for s, i in self._spo.items() for p, os_ in i.items() for o in os_}
        pos = {Triple(s, p, o) for p, i in self._pos.items() for o, ss in i.items() for s in ss}
        osp = {Triple(s, p, o) for o, i in self._osp.items() for s, ps in i.items() for p in ps}
        return spo, pos, osp


def insert(g: Graph, t: Triple) -> bool:
    return g.insert(t)


def remove(g: Graph, t: Triple) -> bool:
    return g.remove(t)


def match_pattern(g: Graph, p: TriplePattern) -> List[Triple]:
    return g.match_pattern(p)


__all__ = ["Graph", "TriplePattern", "InvalidTriple", "insert", "remove", "match_pattern"]

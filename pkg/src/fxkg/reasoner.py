"""Forward-chaining materialization.

Rules, applied to a least fixpoint:

R1  (x type C), C below D               => (x type D)
R2  (x hasExpertiseIn S), S below T     => (x hasExpertiseIn T); same for ``teaches``
R3  (x P y)                             => (x type domain(P)); object properties
                                           also give (y type range(P)) unless y is a literal
R4  (d hasFacultyMember m)             <=> (m belongsToDepartment d)
R5  (a E S), (b E S), a != b            => (a suggestedCollaborator b), for E in
                                           {hasExpertiseIn, teachesIn}; S must not be
                                           the root or a top-level class

Evaluation is semi-naive: each round only joins against facts that are new
in the previous round.  A triple's provenance is the lowest-numbered rule
that derived it in the round it first appeared.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Set, Tuple

from .errors import CycleDetected
from .schema import OBJECT, Schema, suggested_collaborator
from .store import Graph
from .terms import RDF_TYPE, Term, Triple, make_iri

RULES = {
    "R1": "subclass transitivity: types propagate to every superclass",
    "R2": "expertise and teaching propagate upward through the subject hierarchy",
    "R3": "domain and range typing",
    "R4": "hasFacultyMember and belongsToDepartment are inverses",
    "R5": "shared expertise or shared programme suggests collaboration",
}


@dataclass
class MaterializedGraph:
    asserted: Graph
    inferred: Graph
    provenance: Dict[Triple, str] = field(default_factory=dict)
    _full: Graph = field(default=None, repr=False)

    @property
    def full(self) -> Graph:
        """Asserted and inferred triples together."""
        if self._full is None:
            g = self.asserted.copy()
            g.update(self.inferred)
            self._full = g
        return self._full

    def rule_for(self, t: Triple):
        return self.provenance.get(t)


def find_cycles(parents: Mapping[Term, FrozenSet[Term]]):
    """Strongly connected components that form cycles, each as a sorted list."""
    index = {}
    low = {}
    stack, on_stack = [], set()
    out = []
    counter = [0]

    def strong(v):
        # iterative Tarjan
        work = [(v, iter(sorted(parents.get(v, ()))))]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(parents.get(w, ())))))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                if len(comp) > 1 or node in parents.get(node, ()):
                    out.append(sorted(comp))

    for v in sorted(parents):
        if v not in index:
            strong(v)
    return sorted(out)


def reachability(parents: Mapping[Term, FrozenSet[Term]]) -> Dict[Term, FrozenSet[Term]]:
    """Reflexive-transitive ancestors of every class; tolerates cycles."""
    out = {}
    for c in parents:
        seen = {c}
        todo = [c]
        while todo:
            for p in parents.get(todo.pop(), ()):
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
        out[c] = frozenset(seen)
    return out


def subclass_closure(schema: Schema) -> Set[Tuple[Term, Term]]:
    """All (class, ancestor) pairs, reflexive pairs included."""
    parents = schema.parents_map()
    cycles = find_cycles(parents)
    if cycles:
        raise CycleDetected([t.text for t in cycles[0]])
    return {(c, a) for c, ancestors in reachability(parents).items() for a in ancestors}


class _Rules:
    def __init__(self, schema: Schema, ancestors: Mapping[Term, FrozenSet[Term]]):
        v = lambda local: make_iri(schema.base, local)
        self.ancestors = ancestors
        self.props = schema.properties
        self.propagating = {v("hasExpertiseIn"), v("teaches")}
        self.sharing = (v("hasExpertiseIn"), v("teachesIn"))
        self.suggested = suggested_collaborator(schema.base)
        self.excluded = frozenset(c.iri for c in schema.classes.values()
                                  if c.level in ("root", "top"))
        self.inverse = {}
        for p in schema.properties.values():
            if p.inverse_of is not None:
                self.inverse[p.iri] = p.inverse_of
                self.inverse.setdefault(p.inverse_of, p.iri)

    def strict_ancestors(self, c):
        return [a for a in self.ancestors.get(c, ()) if a != c]

    def single(self, t: Triple):
        """Yield (rule, triple) for rules R1-R4 that need only ``t``."""
        s, p, o = t
        if p == RDF_TYPE and o.is_iri:
            for a in self.strict_ancestors(o):
                yield "R1", Triple(s, RDF_TYPE, a)
        if p in self.propagating:
            for a in self.strict_ancestors(o):
                yield "R2", Triple(s, p, a)
        pd = self.props.get(p)
        if pd is not None:
            yield "R3", Triple(s, RDF_TYPE, pd.domain)
            if pd.kind == OBJECT and not o.is_literal:
                yield "R3", Triple(o, RDF_TYPE, pd.range)
        q = self.inverse.get(p)
        if q is not None and not o.is_literal:
            yield "R4", Triple(o, q, s)

    def shareable(self, t: Triple) -> bool:
        return t.predicate in self.sharing and t.object not in self.excluded


def materialize(g: Graph, schema: Schema) -> MaterializedGraph:
    """Compute the least fixpoint of R1-R5 over ``g``.

    Raises :class:`CycleDetected` if the schema's class graph has a cycle.
    """
    parents = schema.parents_map()
    cycles = find_cycles(parents)
    if cycles:
        raise CycleDetected([t.text for t in cycles[0]])
    return _materialize(g, schema, reachability(parents))


def materialize_tolerant(g: Graph, schema: Schema) -> MaterializedGraph:
    """Like :func:`materialize` but treats a cyclic hierarchy as reachability."""
    return _materialize(g, schema, reachability(schema.parents_map()))


def _materialize(g: Graph, schema: Schema, ancestors) -> MaterializedGraph:
    rules = _Rules(schema, ancestors)
    asserted = g.copy()
    known = asserted.copy()
    provenance: Dict[Triple, str] = {}
    # (predicate, object) -> subjects, for R5 joins
    sharers = defaultdict(set)
    for t in known:
        if rules.shareable(t):
            sharers[(t.predicate, t.object)].add(t.subject)

    delta = list(known)
    while delta:
        new: Dict[Triple, str] = {}

        def emit(rule, t):
            if t not in known and (t not in new or rule < new[t]):
                new[t] = rule

        for t in delta:
            for rule, derived in rules.single(t):
                emit(rule, derived)
            if rules.shareable(t):
                a = t.subject
                for b in sharers[(t.predicate, t.object)]:
                    if a != b:
                        emit("R5", Triple(a, rules.suggested, b))
                        emit("R5", Triple(b, rules.suggested, a))
        for t, rule in new.items():
            known.insert(t)
            provenance[t] = rule
            if rules.shareable(t):
                sharers[(t.predicate, t.object)].add(t.subject)
        delta = list(new)

    inferred = Graph(provenance)
    return MaterializedGraph(asserted, inferred, provenance, known)

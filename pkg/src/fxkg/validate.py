"""Schema conformance checking.

Codes and severities:

=================  ========  ==============================================
DOMAIN_VIOLATION   error     subject's declared type is outside domain(P)
RANGE_VIOLATION    error     object's declared type/datatype outside range(P)
CARD_MIN           warning   fewer distinct values of P than min_card
CARD_MAX           error     more distinct values of P than max_card
UNKNOWN_PREDICATE  warning   predicate neither in the schema nor built in
SUBCLASS_CYCLE     error     the class hierarchy has a cycle
DANGLING_IRI       warning   object of an object property that is never
                             described (not a subject, not a schema class)
=================  ========  ==============================================

Domain and range are checked on asserted triples against *declared* types:
asserted ``rdf:type`` values plus, for a schema class used as a value, its
parent classes, all closed upward.  Types produced by domain/range typing
are not used for these checks, since counting them would make every check
pass trivially.  Untyped nodes are accepted (open world).

Cardinality is checked on the materialized graph by default, so inverse
links and typing count.  Nodes that already have a domain or range finding
are skipped there to avoid a cascade of findings from one bad triple.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List

from .reasoner import find_cycles, materialize_tolerant, reachability
from .schema import ANNOTATION_PREDICATES, DATA, OBJECT, Schema, suggested_collaborator
from .store import Graph
from .terms import RDF_TYPE, XSD_STRING, Term

ERROR = "error"
WARNING = "warning"

SEVERITY = {
    "DOMAIN_VIOLATION": ERROR,
    "RANGE_VIOLATION": ERROR,
    "CARD_MIN": WARNING,
    "CARD_MAX": ERROR,
    "UNKNOWN_PREDICATE": WARNING,
    "SUBCLASS_CYCLE": ERROR,
    "DANGLING_IRI": WARNING,
}


@dataclass(frozen=True, order=True)
class Finding:
    code: str
    subject: Term
    detail: str
    severity: str = field(default="", compare=False)

    def to_dict(self):
        return {"severity": self.severity, "code": self.code,
                "subject": self.subject.value if not self.subject.is_literal else self.subject.text,
                "detail": self.detail}


@dataclass
class ValidationReport:
    findings: List[Finding]

    @property
    def counts(self) -> Dict[str, int]:
        out = {ERROR: 0, WARNING: 0}
        for f in self.findings:
            out[f.severity] += 1
        return out

    @property
    def ok(self) -> bool:
        return not self.findings

    @property
    def errors(self):
        return [f for f in self.findings if f.severity == ERROR]

    @property
    def warnings(self):
        return [f for f in self.findings if f.severity == WARNING]

    def codes(self):
        return [f.code for f in self.findings]

    def to_dict(self):
        return {"findings": [f.to_dict() for f in self.findings], "counts": self.counts}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"{f.severity.upper():7} {f.code} {f.subject.text}: {f.detail}"
                 for f in self.findings]
        c = self.counts
        lines.append(f"{c[ERROR]} error(s), {c[WARNING]} warning(s)")
        return "\n".join(lines) + "\n"


def _name(t: Term) -> str:
    return t.local_name() if t.is_iri else t.text


def validate(g: Graph, schema: Schema, asserted_only: bool = False) -> ValidationReport:
    findings = []

    def add(code, subject, detail):
        findings.append(Finding(code, subject, detail, SEVERITY[code]))

    parents = schema.parents_map()
    for cycle in find_cycles(parents):
        add("SUBCLASS_CYCLE", cycle[0], "cycle among " + ", ".join(_name(c) for c in cycle))
    ancestors = reachability(parents)

    def up(types):
        out = set()
        for t in types:
            out |= ancestors.get(t, {t})
        return out

    declared_cache = {}

    def declared(node):
        if node not in declared_cache:
            base = {o for o in g.objects(node, RDF_TYPE) if o.is_iri}
            if node in parents:
                base |= parents[node]
            declared_cache[node] = up(base)
        return declared_cache[node]

    known = set(schema.properties) | ANNOTATION_PREDICATES | {suggested_collaborator(schema.base)}
    flagged = set()
    for t in g.sorted_triples():
        s, p, o = t
        if p not in known:
            add("UNKNOWN_PREDICATE", s, f"predicate {p.text} is not defined by the schema")
            continue
        pd = schema.properties.get(p)
        if pd is None:
            continue
        types = declared(s)
        if types and pd.domain not in types:
            add("DOMAIN_VIOLATION", s,
                f"{_name(p)} expects a {_name(pd.domain)} subject; subject is typed "
                + ", ".join(sorted(_name(x) for x in types - {schema.root})))
            flagged.add(s)
        if pd.kind == DATA:
            ok = o.is_literal and o.datatype in (None, pd.range.value) \
                and not (o.datatype is None and pd.range.value != XSD_STRING)
            if not ok:
                add("RANGE_VIOLATION", s, f"{_name(p)} expects a {_name(pd.range)} literal; got {o.text}")
                flagged.add(s)
        else:
            if o.is_literal:
                add("RANGE_VIOLATION", s, f"{_name(p)} expects a {_name(pd.range)}; got literal {o.text}")
                flagged.add(s)
            else:
                otypes = declared(o)
                if otypes and pd.range not in otypes:
                    add("RANGE_VIOLATION", s,
                        f"{_name(p)} expects a {_name(pd.range)} object; {_name(o)} is typed "
                        + ", ".join(sorted(_name(x) for x in otypes - {schema.root})))
                    flagged.add(s)
                    flagged.add(o)

    # dangling references: judged on asserted data only
    dangling = set()
    for t in g:
        pd = schema.properties.get(t.predicate)
        o = t.object
        if pd is not None and pd.kind == OBJECT and o.is_iri and o not in parents \
                and not g.has_subject(o):
            dangling.add(o)
    for o in sorted(dangling):
        add("DANGLING_IRI", o, f"{o.text} is referenced but never described")

    checked = g if asserted_only else materialize_tolerant(g, schema).full
    if asserted_only:
        typed = lambda cls: {n for n in g.subject_terms() if cls in declared(n)}
    else:
        typed = lambda cls: set(checked.subjects(RDF_TYPE, cls))
    for pd in sorted(schema.properties.values(), key=lambda d: d.iri.text):
        if pd.min_card == 0 and pd.max_card is None:
            continue
        candidates = typed(pd.domain) | {t.subject for t in checked.triples(None, pd.iri, None)}
        for node in sorted(candidates - flagged):
            n = checked.count(node, pd.iri, None)
            if n < pd.min_card:
                add("CARD_MIN", node, f"{_name(pd.iri)} has {n} value(s); at least {pd.min_card} required")
            if pd.max_card is not None and n > pd.max_card:
                add("CARD_MAX", node, f"{_name(pd.iri)} has {n} value(s); at most {pd.max_card} allowed")

    findings.sort()
    return ValidationReport(findings)

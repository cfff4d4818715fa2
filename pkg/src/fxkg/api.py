"""Lookup operations shared by the CLI and the HTTP service.

Every public function here returns plain JSON-ready data; :func:`dumps` is
the one serializer both front ends use, which is what keeps their output
byte-identical.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from .csv_ingest import camel_local, slugify
from .errors import LookupFailed
from .query import evaluate, parse_query
from .reasoner import MaterializedGraph, materialize, reachability
from .schema import Schema, Vocab, builtin_faculty_schema, suggested_collaborator
from .seed import build_seed_dataset
from .store import Graph
from .terms import RDFS_LABEL, RDFS_SUBCLASS_OF, RDF_TYPE, Term, Triple
from .turtle import parse_turtle


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


@dataclass
class Dataset:
    """A loaded graph, its schema, and the materialization (computed once)."""
    graph: Graph
    schema: Schema
    _mg: Optional[MaterializedGraph] = field(default=None, repr=False)

    @property
    def base(self) -> str:
        return self.schema.base

    @property
    def vocab(self) -> Vocab:
        return Vocab(self.schema.base)

    @property
    def materialized(self) -> MaterializedGraph:
        if self._mg is None:
            self._mg = materialize(self.graph, self.schema)
        return self._mg

    def view(self, use_inference: bool) -> Graph:
        return self.materialized.full if use_inference else self.graph

    def run(self, text: str, use_inference: bool = True):
        ast = parse_query(text, {"fx": self.base, **self.schema.prefixes})
        return ast, evaluate(ast, self.materialized, use_inference)


def read_triples(path, base: str) -> List[Triple]:
    text = Path(path).read_text(encoding="utf-8-sig")
    return parse_turtle(text, base)


def load_dataset(paths: Sequence = (), base: Optional[str] = None) -> Dataset:
    """Load Turtle files, or the built-in seed dataset when none are given."""
    schema = builtin_faculty_schema(base)
    g = Graph()
    if paths:
        for p in paths:
            g.update(read_triples(p, schema.base))
    else:
        g.update(build_seed_dataset(schema.base))
    return Dataset(g, schema)


# --- name resolution --------------------------------------------------------

def _label(ds: Dataset, node: Term) -> str:
    lit = ds.graph.value(node, RDFS_LABEL)
    if lit is not None:
        return lit.value
    return ds.schema.label(node) or node.local_name()


def subject_candidates(ds: Dataset):
    """Schema classes under SubjectArea plus subject areas declared in the data."""
    v = ds.vocab
    ancestors = reachability(ds.schema.parents_map())
    out = {}
    for c in ds.schema.classes.values():
        if v.SubjectArea in ancestors.get(c.iri, ()):
            out[c.iri] = c.label or c.iri.local_name()
    for n in ds.graph.subjects(RDF_TYPE, v.SubjectArea):
        out[n] = _label(ds, n)
    for n in ds.graph.subjects(RDFS_SUBCLASS_OF, v.SubjectArea):
        out.setdefault(n, _label(ds, n))
    return out


def resolve_subject(ds: Dataset, text: str) -> Term:
    """Accept a local name ("QuantumMechanics") or a label ("quantum mechanics")."""
    wanted = text.strip()
    folded = wanted.casefold()
    cands = subject_candidates(ds)
    for rule in (lambda t, lab: t.local_name() == wanted,
                 lambda t, lab: lab.casefold() == folded,
                 lambda t, lab: t.local_name().casefold() == camel_local(wanted).casefold()):
        hits = sorted(t for t, lab in cands.items() if rule(t, lab))
        if len(hits) == 1:
            return hits[0]
        if hits:
            raise LookupFailed(f"subject {text!r} is ambiguous", [cands[h] for h in hits])
    near = sorted(lab for lab in cands.values() if folded and folded in lab.casefold())
    raise LookupFailed(f"unknown subject {text!r}", near, ambiguous=False)


def faculty_members(ds: Dataset):
    return {s: o.value for s, _, o in ds.graph.triples(None, ds.vocab.hasName, None)
            if o.is_literal}


def resolve_faculty(ds: Dataset, text: str) -> Term:
    """Match a local name, a name slug, a full name, or a unique name fragment."""
    wanted = text.strip()
    folded = wanted.casefold()
    people = faculty_members(ds)
    rules = (
        lambda t, n: t.local_name() == wanted,
        lambda t, n: t.local_name().casefold() == folded or slugify(t.local_name()) == folded,
        lambda t, n: slugify(n) == slugify(wanted) or n.casefold() == folded,
        lambda t, n: bool(folded) and folded in n.casefold(),
    )
    for rule in rules:
        hits = sorted(t for t, n in people.items() if rule(t, n))
        if len(hits) == 1:
            return hits[0]
        if hits:
            raise LookupFailed(f"faculty {text!r} is ambiguous", sorted(people[h] for h in hits))
    raise LookupFailed(f"no faculty member matches {text!r}")


# --- JSON shapes ------------------------------------------------------------

def term_json(t: Optional[Term]):
    if t is None:
        return None
    out = {"type": t.kind, "value": t.value}
    if t.datatype is not None:
        out["datatype"] = t.datatype
    return out


def _value(t: Optional[Term]):
    return None if t is None else t.value


def query_payload(ds: Dataset, text: str, use_inference: bool = True) -> dict:
    ast, sols = ds.run(text, use_inference)
    names = ast.variables
    return {"head": names,
            "results": [{n: term_json(s[n]) for n in names} for s in sols]}


# --- expert referral --------------------------------------------------------

def experts_query(subject: Term, base: str) -> str:
    """The canonical experts query; ``fx experts`` returns exactly its solutions."""
    return (f"PREFIX fx: <{base}>\n"
            "PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>\n"
            "SELECT DISTINCT ?faculty ?name ?department ?email ?subject WHERE {\n"
            "  ?faculty fx:hasExpertiseIn ?subject ;\n"
            "           fx:hasName ?name .\n"
            f"  FILTER(?subject = {subject.text})\n"
            "  OPTIONAL { ?faculty fx:belongsToDepartment ?dept . ?dept rdfs:label ?department }\n"
            "  OPTIONAL { ?faculty fx:hasEmail ?email }\n"
            "}\n")


def experts(ds: Dataset, subject: str, use_inference: bool = True) -> List[dict]:
    s = resolve_subject(ds, subject)
    _, sols = ds.run(experts_query(s, ds.base), use_inference)
    label = _label(ds, s)
    return [{"name": _value(r["name"]), "department": _value(r["department"]),
             "email": _value(r["email"]), "specializations": [label]} for r in sols]


def collaborators_query(person: Term, base: str, suggested: bool) -> str:
    if suggested:
        body = f"  {person.text} <{suggested_collaborator(base).value}> ?other .\n"
    else:
        body = (f"  {{ {person.text} fx:collaboratesWith ?other . }}\n"
                "  UNION\n"
                f"  {{ ?other fx:collaboratesWith {person.text} . }}\n")
    return (f"PREFIX fx: <{base}>\n"
            "SELECT DISTINCT ?other ?name ?email WHERE {\n" + body +
            "  ?other fx:hasName ?name .\n"
            "  OPTIONAL { ?other fx:hasEmail ?email }\n"
            "}\n")


def collaborators(ds: Dataset, name: str, suggested: bool = False,
                  use_inference: bool = True) -> List[dict]:
    """Recorded collaborators in either direction, or reasoner suggestions."""
    person = resolve_faculty(ds, name)
    _, sols = ds.run(collaborators_query(person, ds.base, suggested), use_inference)
    return [{"name": r["name"].value, "slug": slugify(r["name"].value),
             "email": _value(r["email"])} for r in sols]


def profile(ds: Dataset, name: str) -> dict:
    """Every outgoing fact about a faculty member, marked asserted or inferred."""
    person = resolve_faculty(ds, name)
    mg = ds.materialized
    facts = []
    for t in mg.full.triples(person, None, None):
        rule = mg.rule_for(t)
        facts.append({"predicate": t.predicate.value, "object": term_json(t.object),
                      "inferred": rule is not None, "rule": rule})
    facts.sort(key=lambda f: (f["predicate"], f["object"]["type"], f["object"]["value"]))
    n = ds.graph.value(person, ds.vocab.hasName)
    return {"iri": person.value, "slug": slugify(n.value) if n else person.local_name(),
            "name": _value(n), "facts": facts}


def health(ds: Dataset) -> dict:
    return {"status": "ok", "triples": len(ds.graph)}


# --- neighbourhood and graph export ------------------------------------------

def describe(ds: Dataset, name: str, radius: int = 2) -> dict:
    """Breadth-first neighbourhood of a faculty member over the materialized
    graph, following edges in both directions up to ``radius`` hops.

    The root and top-level classes are reported but not expanded: every
    individual is one hop from them, so expanding would return the graph."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    start = resolve_faculty(ds, name)
    mg = ds.materialized
    g = mg.full
    depth = {start: 0}
    edges = set()
    hubs = {c.iri for c in ds.schema.classes.values() if c.level in ("root", "top")}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if depth[node] >= radius or node in hubs:
            continue
        for t in list(g.triples(node, None, None)) + list(g.triples(None, None, node)):
            edges.add(t)
            for other in (t.subject, t.object):
                if not other.is_literal and other not in depth:
                    depth[other] = depth[node] + 1
                    queue.append(other)
    return {
        "root": start.value,
        "radius": radius,
        "nodes": [{"term": term_json(n), "depth": d}
                  for n, d in sorted(depth.items(), key=lambda kv: (kv[1], kv[0]))],
        "edges": [{"subject": t.subject.value, "predicate": t.predicate.value,
                   "object": term_json(t.object), "inferred": t in mg.provenance}
                  for t in sorted(edges, key=lambda t: t.sort_key)],
    }


def _dot_id(t: Term) -> str:
    return '"' + t.text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_label(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(triples: Iterable[Triple], schema: Schema) -> str:
    """Graphviz text: classes as ellipses, individuals as boxes, literals as
    notes, one labelled edge per triple (subclass edges included)."""
    triples = sorted(set(triples), key=lambda t: t.sort_key)
    classes = set(schema.classes)
    labels = {}
    for s, p, o in triples:
        if p == RDFS_LABEL and o.is_literal:
            labels[s] = o.value
        if p == RDFS_SUBCLASS_OF:
            classes.update((s, o))
        if p == RDF_TYPE:
            classes.add(o)
    nodes = {}
    for s, p, o in triples:
        for n in (s, o):
            nodes.setdefault(n, None)
    lines = ["digraph fx {", "  rankdir=LR;", '  node [fontname="Helvetica"];']
    for n in sorted(nodes):
        if n.is_literal:
            shape, text = "note", n.value
        else:
            shape = "ellipse" if n in classes else "box"
            text = labels.get(n) or schema.label(n) or n.local_name()
        lines.append(f"  {_dot_id(n)} [shape={shape}, label={_dot_label(text)}];")
    for s, p, o in triples:
        lines.append(f"  {_dot_id(s)} -> {_dot_id(o)} [label={_dot_label(p.local_name())}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

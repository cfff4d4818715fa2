"""Independent reference implementations and random generators for tests.

Nothing here calls the code under test except for plain data types (Term,
Triple, the AST dataclasses) and the built-in schema definition.
"""

from __future__ import annotations

import itertools
import random

from fxkg.query.ast import FilterExpr, GroupPattern, OrderBy, PatternTriple, QueryAst, Var
from fxkg.schema import DATA, OBJECT, builtin_faculty_schema
from fxkg.terms import RDF_TYPE, Term, Triple, blank, iri, literal

BASE = "https://example.org/fx#"
SCHEMA = builtin_faculty_schema(BASE)


def fx(local):
    return iri(BASE + local)


# --- store -------------------------------------------------------------------

def scan(triples, s=None, p=None, o=None):
    """Linear-scan pattern match, sorted by canonical text."""
    out = [t for t in triples
           if (s is None or t[0] == s) and (p is None or t[1] == p) and (o is None or t[2] == o)]
    return sorted(out, key=lambda t: (t[0].text, t[1].text, t[2].text))


# --- reasoner ---------------------------------------------------------------

def ancestors_by_warshall(schema):
    """Reflexive-transitive closure of the parent relation, Warshall style."""
    nodes = sorted(set(schema.classes) | {p for c in schema.classes.values() for p in c.parents})
    reach = {a: {b: (a == b) for b in nodes} for a in nodes}
    for c in schema.classes.values():
        for p in c.parents:
            reach[c.iri][p] = True
    for k in nodes:
        for i in nodes:
            if reach[i][k]:
                for j in nodes:
                    if reach[k][j]:
                        reach[i][j] = True
    return {a: {b for b in nodes if reach[a][b]} for a in nodes}


def naive_fixpoint(triples, schema=SCHEMA):
    """Apply every rule to the whole fact set until nothing changes.

    Returns (inferred set, provenance) where provenance is the lowest rule id
    among all derivations of a triple in the round it first appears.
    """
    anc = ancestors_by_warshall(schema)
    v = lambda local: iri(schema.base + local)
    suggested = v("suggestedCollaborator")
    excluded = {c.iri for c in schema.classes.values() if c.level in ("root", "top")}
    inverse = {}
    for pd in schema.properties.values():
        if pd.inverse_of is not None:
            inverse[pd.iri] = pd.inverse_of
            inverse[pd.inverse_of] = pd.iri

    facts = set(triples)
    asserted = set(triples)
    provenance = {}
    while True:
        derived = {}

        def add(rule, t):
            if t not in facts and (t not in derived or rule < derived[t]):
                derived[t] = rule

        for s, p, o in facts:
            if p == RDF_TYPE:
                for a in anc.get(o, ()):
                    if a != o:
                        add("R1", Triple(s, RDF_TYPE, a))
            if p in (v("hasExpertiseIn"), v("teaches")):
                for a in anc.get(o, ()):
                    if a != o:
                        add("R2", Triple(s, p, a))
            pd = schema.properties.get(p)
            if pd is not None:
                add("R3", Triple(s, RDF_TYPE, pd.domain))
                if pd.kind == OBJECT and not o.is_literal:
                    add("R3", Triple(o, RDF_TYPE, pd.range))
            if p in inverse and not o.is_literal:
                add("R4", Triple(o, inverse[p], s))
        for p in (v("hasExpertiseIn"), v("teachesIn")):
            pairs = [(s, o) for s, q, o in facts if q == p and o not in excluded]
            for (a, s1), (b, s2) in itertools.product(pairs, pairs):
                if s1 == s2 and a != b:
                    add("R5", Triple(a, suggested, b))
        if not derived:
            break
        facts |= set(derived)
        provenance.update(derived)
    return facts - asserted, provenance


# --- query --------------------------------------------------------------------

class OracleTypeError(Exception):
    pass


def _value(node, mu):
    return mu.get(node.name) if isinstance(node, Var) else node


def _filter(f, mu):
    left, right = mu.get(f.left.name), _value(f.right, mu)
    if left is None or right is None:
        return False
    if f.op == "eq":
        return left == right
    if f.op == "neq":
        return left != right
    if not (left.is_literal and right.is_literal):
        raise OracleTypeError(f.op)
    if f.op == "contains":
        return right.value.lower() in left.value.lower()
    # the generator only emits plain-text patterns with optional ^ / $ anchors
    pat = right.value
    head = pat.startswith("^")
    tail = pat.endswith("$") and len(pat) > int(head)
    core = pat[int(head):len(pat) - int(tail)]
    if head and tail:
        return left.value == core
    if head:
        return left.value.startswith(core)
    if tail:
        return left.value.endswith(core)
    return core in left.value


def brute_group(facts, universe, gp, mu):
    """Every assignment of the group's new variables over ``universe`` that
    grounds all triple patterns into ``facts``; then unions, optionals and
    filters in the documented order."""
    fresh = [v for v in gp.own_variables() if mu.get(v) is None]
    sols = []
    for combo in itertools.product(universe, repeat=len(fresh)):
        cand = dict(mu)
        cand.update(zip(fresh, combo))
        if all((_value(t.subject, cand), _value(t.predicate, cand), _value(t.object, cand))
               in facts for t in gp.triples):
            sols.append(cand)
    for left, right in gp.unions:
        sols = [x for m in sols
                for x in brute_group(facts, universe, left, m) + brute_group(facts, universe, right, m)]
    for opt in gp.optionals:
        nxt = []
        for m in sols:
            ext = brute_group(facts, universe, opt, m)
            nxt.extend(ext or [m])
        sols = nxt
    for f in gp.filters:
        sols = [m for m in sols if _filter(f, m)]
    return sols


def brute_query(triples, ast: QueryAst):
    """Reference answer as a list of tuples of canonical texts (None = unbound)."""
    facts = {tuple(t) for t in triples}
    universe = sorted({x for t in facts for x in t}, key=lambda x: x.text)
    names = ast.variables
    rows = [tuple(m.get(n) for n in names)
            for m in brute_group(facts, universe, ast.pattern, {})]
    key = lambda r: [(0, "") if x is None else (1, x.text) for x in r]
    if ast.distinct:
        uniq = []
        for r in rows:
            if r not in uniq:
                uniq.append(r)
        rows = uniq
    rows = sorted(rows, key=key)
    if ast.order_by is not None:
        i = names.index(ast.order_by.var.name)
        rows = sorted(rows, key=lambda r: key([r[i]]), reverse=ast.order_by.descending)
    if ast.limit is not None:
        rows = rows[:ast.limit]
    return [tuple(None if x is None else x.text for x in r) for r in rows]


def solutions_as_rows(sols, names):
    return [tuple(None if s[n] is None else s[n].text for n in names) for s in sols]


# --- random generators -----------------------------------------------------------

Q_NODES = [fx(f"n{i}") for i in range(7)]
Q_PREDS = [fx("p"), fx("q"), fx("r")]
Q_LITS = [literal("alpha"), literal("Beta"), literal("alphabet"), literal("gamma ray")]


def random_query_graph(rng: random.Random, max_triples=100):
    n = rng.randint(0, max_triples)
    out = set()
    for _ in range(n):
        s = rng.choice(Q_NODES)
        p = rng.choice(Q_PREDS)
        o = rng.choice(Q_LITS) if p == Q_PREDS[2] and rng.random() < 0.8 else rng.choice(Q_NODES)
        out.add(Triple(s, p, o))
    return sorted(out, key=lambda t: t.sort_key)


def _random_triples(rng, names, count):
    pats = []
    for _ in range(count):
        def node(literal_ok=False):
            r = rng.random()
            if r < 0.7:
                return Var(rng.choice(names))
            if literal_ok and r < 0.85:
                return rng.choice(Q_LITS)
            return rng.choice(Q_NODES)
        s = node()
        p = Var(rng.choice(names)) if rng.random() < 0.15 else rng.choice(Q_PREDS)
        o = node(literal_ok=True)
        pats.append(PatternTriple(s, p, o))
    return tuple(pats)


def _vars_of(pats):
    out = []
    for t in pats:
        for x in (t.subject, t.predicate, t.object):
            if isinstance(x, Var) and x.name not in out:
                out.append(x.name)
    return out


def _random_filter(rng, in_scope):
    left = Var(rng.choice(in_scope))
    op = rng.choice(["eq", "neq", "contains", "regex"])
    if op in ("eq", "neq"):
        r = rng.random()
        if r < 0.4 and len(in_scope) > 1:
            right = Var(rng.choice(in_scope))
        elif r < 0.7:
            right = rng.choice(Q_NODES)
        else:
            right = rng.choice(Q_LITS)
    elif op == "contains":
        right = literal(rng.choice(["ALPHA", "a", "ray", "bet", "zzz", ""]))
    else:
        right = literal(rng.choice(["^alpha", "bet$", "^Beta$", "ray", "^gamma ray$", "pha"]))
    return FilterExpr(op, left, right)


def random_query(rng: random.Random) -> QueryAst:
    """≤4 triple patterns, ≤2 filters, ≤4 distinct variables."""
    names = rng.sample(["a", "b", "c", "d"], rng.randint(1, 4))
    total = rng.randint(1, 4)
    shape = rng.random()
    n_opt = 1 if shape < 0.2 and total >= 2 else 0
    n_union = 2 if 0.2 <= shape < 0.35 and total >= 3 else 0
    main_n = total - n_opt - n_union
    main = _random_triples(rng, names, main_n)
    bound = _vars_of(main)
    optionals, unions = (), ()
    if n_opt:
        optionals = (GroupPattern(_random_triples(rng, names, 1)),)
    if n_union:
        unions = ((GroupPattern(_random_triples(rng, names, 1)),
                   GroupPattern(_random_triples(rng, names, 1))),)
    scope_all = list(dict.fromkeys(
        bound + [v for g in optionals for v in g.own_variables()]
        + [v for pair in unions for g in pair for v in g.own_variables()]))
    filters = ()
    if scope_all:
        filters = tuple(_random_filter(rng, scope_all) for _ in range(rng.randint(0, 2)))
    # a filter whose right-hand variable is out of scope would not parse
    filters = tuple(f for f in filters
                    if not isinstance(f.right, Var) or f.right.name in scope_all)
    pattern = GroupPattern(main, filters, optionals, unions)
    all_vars = pattern.all_variables()
    if not all_vars:
        return QueryAst(None, pattern, rng.random() < 0.3, None, rng.choice([None, None, 3]))
    if rng.random() < 0.25:
        projection = None
        projected = all_vars
    else:
        projected = rng.sample(all_vars, rng.randint(1, len(all_vars)))
        projection = tuple(Var(n) for n in projected)
    order_by = None
    if rng.random() < 0.3:
        order_by = OrderBy(Var(rng.choice(projected)), rng.random() < 0.5)
    limit = rng.choice([None, None, None, 1, 2, 5])
    return QueryAst(projection, pattern, rng.random() < 0.4, order_by, limit)


# reasoner graphs: individuals, a slice of the schema, and literals
R_PEOPLE = [fx(f"x{i}") for i in range(8)]
R_DEPTS = [fx("D1"), fx("D2")]
R_PROGS = [fx("P1"), fx("P2")]
R_SUBJECTS = [fx(c) for c in ("ArtificialIntelligence", "DataMining", "ComputerScience",
                               "Calculus", "Mathematics", "QuantumMechanics", "SubjectArea",
                               "Thing")]
R_CLASSES = [fx(c) for c in ("FacultyMember", "Department", "AcademicProgram", "BTech", "MTech",
                              "ComputerScience", "ArtificialIntelligence", "Thing")]


def random_reasoner_graph(rng: random.Random, max_triples=200):
    props = sorted(SCHEMA.properties.values(), key=lambda p: p.iri.text)
    n = rng.randint(0, max_triples)
    out = set()
    nodes = R_PEOPLE + R_DEPTS + R_PROGS
    for _ in range(n):
        r = rng.random()
        if r < 0.15:
            out.add(Triple(rng.choice(nodes), RDF_TYPE, rng.choice(R_CLASSES)))
            continue
        pd = rng.choice(props)
        s = rng.choice(nodes)
        if pd.kind == DATA:
            o = literal(f"v{rng.randint(0, 3)}")
        elif pd.iri == fx("hasExpertiseIn") or pd.iri == fx("teaches"):
            o = rng.choice(R_SUBJECTS)
        elif pd.iri == fx("teachesIn"):
            o = rng.choice(R_PROGS + R_PEOPLE[:1])
        else:
            o = rng.choice(nodes)
        out.add(Triple(s, pd.iri, o))
    return sorted(out, key=lambda t: t.sort_key)


# turtle graphs: awkward IRIs and literal contents on purpose
_LEX = ["", "plain", 'say "hi"', "back\\slash", "tab\there", "line\nbreak", "cr\rhere",
        "unicode é ✓", "emoji 😀", "# not a comment", "semi;colon, comma.", "@prefix"]
_IRIS = [fx("Alpha"), fx("with-dash"), fx("_under"), iri(BASE + "dot.ted"),
         iri(BASE + "9digit"), iri("http://example.com/path/to/thing"),
         iri("urn:isbn:0451450523"), iri("https://example.org/other#x%20y"),
         iri("http://www.w3.org/2000/01/rdf-schema#label"), RDF_TYPE]


def random_turtle_graph(rng: random.Random, max_triples=60):
    out = set()
    for _ in range(rng.randint(0, max_triples)):
        s = rng.choice(_IRIS) if rng.random() < 0.8 else blank(f"b{rng.randint(0, 3)}")
        p = rng.choice(_IRIS)
        r = rng.random()
        if r < 0.4:
            o = rng.choice(_IRIS)
        elif r < 0.5:
            o = blank(f"b{rng.randint(0, 3)}")
        elif r < 0.8:
            o = literal(rng.choice(_LEX))
        else:
            o = literal(rng.choice(_LEX), rng.choice([
                "http://www.w3.org/2001/XMLSchema#string", "http://www.w3.org/2001/XMLSchema#date",
                BASE + "Custom"]))
        out.add(Triple(s, p, o))
    return out

"""Query evaluation over a graph.

A group is evaluated against an incoming partial solution: its triple
patterns are joined (nested-loop over the indexes, cheapest pattern first),
then each UNION pair is joined in, then OPTIONAL groups are left-joined, and
finally the group's filters prune.  Nested groups see the bindings of the
enclosing solution.
"""

from __future__ import annotations

from itertools import chain
from typing import Dict, List, Optional, Sequence, Union

from ..errors import QueryTypeError
from ..reasoner import MaterializedGraph, materialize
from ..store import Graph
from ..terms import Term
from .ast import FilterExpr, GroupPattern, PatternTriple, QueryAst, Var
from .parser import parse_query
from .regex import regex_search

Solution = Dict[str, Optional[Term]]


def _resolve(node, mu):
    if isinstance(node, Var):
        return mu.get(node.name)
    return node


def _static_count(graph: Graph, pt: PatternTriple) -> int:
    s, p, o = (None if isinstance(x, Var) else x for x in (pt.subject, pt.predicate, pt.object))
    return graph.count(s, p, o)


def _bgp(graph: Graph, patterns: Sequence[PatternTriple], mu: Solution):
    if not patterns:
        yield mu
        return
    # bound-ness of the incoming solution is ignored on purpose: ordering is a
    # heuristic only and must never change the answer
    order = sorted(range(len(patterns)), key=lambda i: (_static_count(graph, patterns[i]), i))
    ordered = [patterns[i] for i in order]

    def step(i, sol):
        if i == len(ordered):
            yield sol
            return
        pt = ordered[i]
        nodes = (pt.subject, pt.predicate, pt.object)
        s, p, o = (_resolve(x, sol) for x in nodes)
        for t in graph.triples(s, p, o):
            ext = sol
            ok = True
            for node, value in zip(nodes, t):
                if isinstance(node, Var):
                    cur = ext.get(node.name)
                    if cur is None:
                        if ext is sol:
                            ext = dict(sol)
                        ext[node.name] = value
                    elif cur != value:
                        ok = False
                        break
            if ok:
                yield from step(i + 1, ext)

    yield from step(0, mu)


def _check_literal(term: Term, op: str) -> Term:
    if not term.is_literal:
        raise QueryTypeError(f"{op.upper()} needs a literal, got {term.text}")
    return term


def filter_passes(f: FilterExpr, mu: Solution) -> bool:
    left = mu.get(f.left.name)
    right = _resolve(f.right, mu)
    if left is None or right is None:
        return False
    if f.op == "eq":
        return left == right
    if f.op == "neq":
        return left != right
    _check_literal(left, f.op)
    _check_literal(right, f.op)
    if f.op == "contains":
        return right.value.casefold() in left.value.casefold()
    if f.op == "regex":
        return regex_search(right.value, left.value)
    raise ValueError(f"unknown filter op {f.op!r}")


def eval_group(graph: Graph, gp: GroupPattern, mu: Solution) -> List[Solution]:
    sols = list(_bgp(graph, gp.triples, mu))
    for left, right in gp.unions:
        sols = [x for m in sols
                for x in chain(eval_group(graph, left, m), eval_group(graph, right, m))]
    for opt in gp.optionals:
        out = []
        for m in sols:
            ext = eval_group(graph, opt, m)
            out.extend(ext if ext else [m])
        sols = out
    for f in gp.filters:
        sols = [m for m in sols if filter_passes(f, m)]
    return sols


def _text_key(term: Optional[Term]):
    return (0, "") if term is None else (1, term.text)


def finish(ast: QueryAst, solutions) -> List[Solution]:
    """Project, deduplicate, order and truncate raw solutions."""
    names = ast.variables
    rows = [tuple(m.get(n) for n in names) for m in solutions]
    if ast.distinct:
        rows = list(dict.fromkeys(rows))
    rows.sort(key=lambda r: tuple(_text_key(t) for t in r))
    if ast.order_by is not None:
        idx = names.index(ast.order_by.var.name)
        rows.sort(key=lambda r: _text_key(r[idx]), reverse=ast.order_by.descending)
    if ast.limit is not None:
        rows = rows[:ast.limit]
    return [dict(zip(names, r)) for r in rows]


def pick_graph(g: Union[Graph, MaterializedGraph], use_inference: bool, schema=None) -> Graph:
    if isinstance(g, MaterializedGraph):
        return g.full if use_inference else g.asserted
    if use_inference and schema is not None:
        return materialize(g, schema).full
    return g


def evaluate(ast: Union[QueryAst, str], g: Union[Graph, MaterializedGraph],
             use_inference: bool = True, schema=None) -> List[Solution]:
    """Run a query.

    ``g`` may be a plain graph or a materialized one.  With a plain graph and
    ``use_inference`` set, ``schema`` (if given) is used to materialize first.
    Each solution maps every projected variable to a term, or ``None`` when an
    OPTIONAL left it unbound.
    """
    if isinstance(ast, str):
        ast = parse_query(ast)
    graph = pick_graph(g, use_inference, schema)
    return finish(ast, eval_group(graph, ast.pattern, {}))

"""Render a :class:`QueryAst` back to query text.

The output re-parses to an equal tree.  IRIs are always written in full.
"""

from ..terms import Term
from .ast import GroupPattern, QueryAst, Var

_OPS = {"eq": "=", "neq": "!="}


def _node(x) -> str:
    if isinstance(x, Var):
        return f"?{x.name}"
    assert isinstance(x, Term)
    return x.text


def _group(gp: GroupPattern, depth: int) -> list:
    """Lines of a braced group; the first line is the bare opening brace."""
    pad = "  " * (depth + 1)
    lines = ["{"]
    for t in gp.triples:
        lines.append(f"{pad}{_node(t.subject)} {_node(t.predicate)} {_node(t.object)} .")
    for left, right in gp.unions:
        sub = _group(left, depth + 1)
        lines.append(pad + sub[0])
        lines += sub[1:]
        sub = _group(right, depth + 1)
        lines.append(pad + "UNION " + sub[0])
        lines += sub[1:]
    for opt in gp.optionals:
        sub = _group(opt, depth + 1)
        lines.append(pad + "OPTIONAL " + sub[0])
        lines += sub[1:]
    for f in gp.filters:
        if f.op in _OPS:
            lines.append(f"{pad}FILTER(?{f.left.name} {_OPS[f.op]} {_node(f.right)})")
        else:
            lines.append(f"{pad}FILTER({f.op.upper()}(?{f.left.name}, {_node(f.right)}))")
    lines.append("  " * depth + "}")
    return lines


def format_query(ast: QueryAst) -> str:
    lines = [f"PREFIX {p}: <{ns}>" for p, ns in ast.prefixes]
    head = "SELECT "
    if ast.distinct:
        head += "DISTINCT "
    head += "*" if ast.projection is None else " ".join(f"?{v.name}" for v in ast.projection)
    body = _group(ast.pattern, 0)
    lines.append(head + " WHERE " + body[0])
    lines += body[1:]
    if ast.order_by is not None:
        direction = "DESC" if ast.order_by.descending else "ASC"
        lines.append(f"ORDER BY {direction}(?{ast.order_by.var.name})")
    if ast.limit is not None:
        lines.append(f"LIMIT {ast.limit}")
    return "\n".join(lines) + "\n"

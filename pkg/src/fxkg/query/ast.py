"""Query syntax tree.  All nodes are immutable and compare structurally."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from ..terms import Term


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return "?" + self.name


Node = Union[Var, Term]


@dataclass(frozen=True)
class PatternTriple:
    subject: Node
    predicate: Node
    object: Node

    def variables(self):
        return [x.name for x in (self.subject, self.predicate, self.object) if isinstance(x, Var)]


@dataclass(frozen=True)
class FilterExpr:
    op: str  # eq | neq | contains | regex
    left: Var
    right: Node

    def variables(self):
        out = [self.left.name]
        if isinstance(self.right, Var):
            out.append(self.right.name)
        return out


@dataclass(frozen=True)
class GroupPattern:
    triples: Tuple[PatternTriple, ...] = ()
    filters: Tuple[FilterExpr, ...] = ()
    optionals: Tuple["GroupPattern", ...] = ()
    unions: Tuple[Tuple["GroupPattern", "GroupPattern"], ...] = ()

    def own_variables(self):
        """Variables of this group's triples, in order of first appearance."""
        seen = {}
        for t in self.triples:
            for v in t.variables():
                seen.setdefault(v)
        return list(seen)

    def all_variables(self):
        """Every variable bound by a triple pattern anywhere in this group."""
        seen = dict.fromkeys(self.own_variables())
        for left, right in self.unions:
            seen.update(dict.fromkeys(left.all_variables()))
            seen.update(dict.fromkeys(right.all_variables()))
        for opt in self.optionals:
            seen.update(dict.fromkeys(opt.all_variables()))
        return list(seen)


@dataclass(frozen=True)
class OrderBy:
    var: Var
    descending: bool = False


@dataclass(frozen=True)
class QueryAst:
    projection: Optional[Tuple[Var, ...]]  # None means SELECT *
    pattern: GroupPattern
    distinct: bool = False
    order_by: Optional[OrderBy] = None
    limit: Optional[int] = None
    prefixes: Tuple[Tuple[str, str], ...] = field(default=())

    @property
    def variables(self):
        """Projected variable names (star expands to every pattern variable)."""
        if self.projection is None:
            return self.pattern.all_variables()
        return [v.name for v in self.projection]

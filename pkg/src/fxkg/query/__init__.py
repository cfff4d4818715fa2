from .ast import FilterExpr, GroupPattern, OrderBy, PatternTriple, QueryAst, Var
from .evaluate import Solution, evaluate
from .parser import parse_query
from .printer import format_query

__all__ = ["FilterExpr", "GroupPattern", "OrderBy", "PatternTriple", "QueryAst", "Var",
           "Solution", "evaluate", "parse_query", "format_query"]

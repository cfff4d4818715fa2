"""The restricted regular-expression dialect accepted by ``REGEX``.

Supported: literal characters, ``.``, ``*``, ``+``, ``?``, bracket classes
``[...]`` (ranges and leading ``^`` negation), anchors ``^`` and ``$``, and
top-level alternation ``|``.  A backslash makes the next character literal.
Anything else (groups, braces, backreferences) is rejected.  Matching is a
case-sensitive search, so an unanchored pattern may match anywhere.

Patterns are checked against this dialect and then translated to Python's
``re`` with every literal escaped, so both sides agree exactly.
"""

import re
from functools import lru_cache

from ..errors import QueryTypeError

_FORBIDDEN = set("(){}")


@lru_cache(maxsize=256)
def compile_pattern(pattern: str):
    out = []
    i = 0
    n = len(pattern)
    prev_quantifiable = False
    while i < n:
        ch = pattern[i]
        if ch == "\\":
            if i + 1 >= n:
                raise QueryTypeError("regex ends with a lone backslash")
            out.append(re.escape(pattern[i + 1]))
            i += 2
            prev_quantifiable = True
        elif ch == "[":
            j = i + 1
            body = []
            if j < n and pattern[j] == "^":
                body.append("^")
                j += 1
            start = j
            while j < n and (pattern[j] != "]" or j == start):
                c = pattern[j]
                if c == "\\" and j + 1 < n:
                    body.append(re.escape(pattern[j + 1]))
                    j += 2
                    continue
                if c == "-" and j != start and j + 1 < n and pattern[j + 1] != "]":
                    body.append("-")
                else:
                    body.append(re.escape(c))
                j += 1
            if j >= n:
                raise QueryTypeError(f"unterminated bracket class in regex {pattern!r}")
            out.append("[" + "".join(body) + "]")
            i = j + 1
            prev_quantifiable = True
        elif ch in "*+?":
            if not prev_quantifiable:
                raise QueryTypeError(f"quantifier {ch!r} has nothing to repeat in {pattern!r}")
            out.append(ch)
            i += 1
            prev_quantifiable = False
        elif ch in "^$|.":
            out.append(ch)
            i += 1
            prev_quantifiable = ch == "."
        elif ch in _FORBIDDEN:
            raise QueryTypeError(f"regex construct {ch!r} is not supported")
        else:
            out.append(re.escape(ch))
            i += 1
            prev_quantifiable = True
    try:
        return re.compile("".join(out), re.S)
    except re.error as exc:  # pragma: no cover - guarded by the checks above
        raise QueryTypeError(f"bad regex {pattern!r}: {exc}") from exc


def regex_search(pattern: str, text: str) -> bool:
    return compile_pattern(pattern).search(text) is not None

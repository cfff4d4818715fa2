"""Exception hierarchy.

Every error carries a stable ``code`` string so that the CLI and the HTTP
service can report it without inspecting the class.
"""


class FxError(Exception):
    code = "error"


class MalformedIRI(FxError, ValueError):
    code = "malformed-iri"


class InvalidTriple(FxError, ValueError):
    code = "invalid-triple"


class ParseError(FxError):
    """Syntax error with a 1-based source position."""

    code = "syntax-error"

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UnknownPrefix(ParseError):
    code = "unknown-prefix"


class UnterminatedLiteral(ParseError):
    code = "unterminated-literal"


class UnboundFilterVariable(ParseError):
    code = "unbound-filter-variable"


class QueryTypeError(FxError, TypeError):
    code = "type-error"


class CycleDetected(FxError):
    code = "cycle-detected"

    def __init__(self, members):
        self.members = members
        super().__init__("subclass cycle among: " + ", ".join(members))


class MissingColumn(FxError):
    code = "missing-column"


class DuplicateHeader(FxError):
    code = "duplicate-header"


class UnknownCQ(FxError, KeyError):
    code = "unknown-cq-id"

    def __str__(self):
        return Exception.__str__(self)


class BadParameter(FxError, ValueError):
    code = "bad-parameter"


class LookupFailed(FxError):
    """A name or subject did not resolve to exactly one node.

    ``ambiguous`` errors list the tied matches; not-found errors may list
    near misses as suggestions."""

    code = "not-found"

    def __init__(self, message, candidates=(), ambiguous=None):
        self.candidates = list(candidates)
        self.ambiguous = bool(self.candidates) if ambiguous is None else ambiguous
        if self.ambiguous:
            self.code = "ambiguous"
        if self.candidates:
            label = "candidates" if self.ambiguous else "did you mean"
            message += f" ({label}: " + ", ".join(self.candidates) + ")"
        super().__init__(message)


class PortInUse(FxError, OSError):
    code = "port-in-use"

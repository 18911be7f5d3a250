"""Exception hierarchy.

Every failure mode of the engine maps to one of these classes, so callers
(including the command line front end) can dispatch on type alone.
"""


class StructuraError(Exception):
    """Base class for all engine errors."""


class SizeExceeded(StructuraError):
    """An operation would materialize more cells than the configured bound."""


class NotASubset(StructuraError):
    """A set was expected to sit inside another set and does not."""


class DomainMismatch(StructuraError):
    """Two maps or a map and a carrier do not line up domain-to-codomain."""


class NotBijective(StructuraError):
    """A bijection was required and the given map is not one."""


class CardinalityMismatch(StructuraError):
    """Two carriers that must have equal cardinality do not."""


class ArityMismatch(StructuraError):
    """The number of carriers or maps does not match the arity of a type."""


class NotAStructureOfType(StructuraError):
    """A value is not a member of the realization of the stated echelon type."""


class EvaluationError(StructuraError):
    """A formula could not be evaluated under the given interpretation."""


class ApplyUndefined(EvaluationError):
    """Function application on a pair-set with no unique matching pair."""


class CaptureDetected(StructuraError):
    """A renaming would move a free symbol under a binder of the same name."""


class UnboundSymbol(StructuraError):
    """A formula refers to a symbol the surrounding declaration does not bind."""

    def __init__(self, message, line=None, col=None):
        super().__init__(message)
        self.line = line
        self.col = col

    def __str__(self):
        if self.line is None:
            return self.args[0]
        return f"{self.args[0]} at line {self.line}, column {self.col}"


class ParseError(StructuraError):
    """Syntax error with position information and the set of expected tokens."""

    def __init__(self, message, line, col, expected=()):
        super().__init__(message)
        self.line = line
        self.col = col
        self.expected = frozenset(expected)

    def __str__(self):
        base = f"{self.args[0]} at line {self.line}, column {self.col}"
        if self.expected:
            base += " (expected: " + ", ".join(sorted(self.expected)) + ")"
        return base


class ArityError(ParseError):
    """A projection index exceeds the declared arity of a type expression."""

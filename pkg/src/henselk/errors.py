"""Error hierarchy shared by all henselk modules.

Every domain error carries a stable machine-readable ``kind`` so the CLI can
map failures to distinct payload records without string matching.
"""

from __future__ import annotations


class HenselkError(Exception):
    """Base class for all domain errors raised by this package."""

    kind = "error"

    def __init__(self, message: str, **data):
        super().__init__(message)
        self.message = message
        self.data = data


# series-core

class DivisionByZero(HenselkError):
    kind = "division-by-zero"


class IndeterminatePrecision(HenselkError):
    """The leading term of a value is hidden below its precision."""

    kind = "indeterminate-precision"


# numberfield

class FieldMismatch(HenselkError):
    kind = "field-mismatch"


class InverseOfZero(HenselkError):
    kind = "inverse-of-zero"


class DegreeCapExceeded(HenselkError):
    kind = "degree-cap-exceeded"


# hensel-puiseux

class NotARoot(HenselkError):
    kind = "not-a-root"


class NotASimpleRoot(HenselkError):
    kind = "not-a-simple-root"


class LeadingCoefficientVanishes(HenselkError):
    kind = "leading-coefficient-vanishes"


# closedness

class UnsupportedSet(HenselkError):
    """Input set lies outside the constant-center, constant-ac fragment."""

    kind = "unsupported-set"


# arcs-loja

class HypothesisFails(HenselkError):
    """Divisibility hypothesis fails: g vanishes where f does not."""

    kind = "hypothesis-fails"


# cli / dsl

class DslParseError(HenselkError):
    kind = "parse-error"

    def __init__(self, message: str, line: int, column: int, expected=()):
        super().__init__(message, line=line, column=column,
                         expected=tuple(expected))
        self.line = line
        self.column = column
        self.expected = tuple(expected)


class InvalidInput(HenselkError):
    """Structurally valid parse that violates an operation's domain."""

    kind = "invalid-input"

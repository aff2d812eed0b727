"""Exception hierarchy shared across the toolkit."""


class GermError(Exception):
    """Base class for all germkit errors."""


class MissingWeightError(GermError):
    """A variable of the polynomial has no assigned weight."""


class ArityMismatchError(GermError):
    """Exponent vectors or substitutions do not match the variable list."""


class ConstantTermError(GermError):
    """A substitution component carries a nonzero constant term."""


class ExactDivisionError(GermError):
    """Division by a pure variable power left a nonzero remainder."""


class SingularLinearPartError(GermError):
    """The linear part of a substitution is not invertible over the rationals."""


class NonIsolatedError(GermError):
    """The germ (or its least-weight part) has no finite Milnor number."""


class SmoothGermError(GermError):
    """The germ is smooth (Milnor number 0); the requested invariant is undefined."""


class HypersurfaceGermError(GermError):
    """The input has a nonzero constant or linear part where a singular germ is required."""


class DeterminacyBoundError(GermError):
    """Requested truncation order is below the finite-determinacy bound."""


class PreconditionError(GermError):
    """An operation precondition (documented on the operation) is violated."""


class NotSimpleError(GermError):
    """The least-weight part is not one of the simple (ADE) forms."""


class UnsupportedGermError(GermError):
    """The germ lies outside the supported classification (not smooth, not compound-A)."""


class RationalObstructionError(GermError):
    """A reduction step would require algebraic numbers (square roots) and cannot
    be carried out over the rationals.  The complex-analytic statement still holds;
    see the marked-normal-form notes in the README."""


class ParseError(GermError):
    """Syntax or unknown-variable error, annotated with 1-based line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column

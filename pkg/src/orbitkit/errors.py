"""Exception hierarchy.  Each class carries the CLI exit category it maps to."""


class OrbitkitError(Exception):
    exit_code = 1


class SpecParseError(OrbitkitError):
    """Syntax or semantic error in a spec document, with a source location."""

    exit_code = 2

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        self.message = message
        loc = f"line {line}, column {column}: " if line else ""
        super().__init__(loc + message)


class ValidationError(OrbitkitError):
    exit_code = 3


class DimensionMismatch(ValidationError):
    pass


class ZeroEigenvalue(ValidationError):
    pass


class NotAnAutomorphism(ValidationError):
    pass


class PreconditionViolated(OrbitkitError):
    exit_code = 4


class NotInGenericLayer(PreconditionViolated):
    pass


class TrivialAction(PreconditionViolated):
    pass


class NotExpansive(PreconditionViolated):
    pass


class ZeroPivotCoordinate(PreconditionViolated):
    pass


class BasisNotThroughDerivedAlgebra(PreconditionViolated):
    pass


class InternalInconsistency(OrbitkitError):
    exit_code = 5


class FactorizationFailed(InternalInconsistency):
    pass

"""Exception hierarchy.

DomainError covers invalid inputs (CLI exit code 3); InternalError covers
arithmetic assertions that signal a bug rather than bad input (exit 4).
"""


class KunumError(Exception):
    pass


class DomainError(KunumError):
    pass


class InternalError(KunumError):
    pass


# lattice
class NotPrimitive(DomainError):
    pass


class UnitVector(DomainError):
    pass


class OracleContradiction(InternalError):
    pass


class NonPositiveOrientation(DomainError):
    pass


# euler forms
class Degenerate(DomainError):
    pass


class NotNegative(DomainError):
    pass


class Incompatible(DomainError):
    pass


class FixedVector(DomainError):
    pass


# chern
class IntegralityViolation(InternalError):
    pass


class NotInKuSpan(DomainError):
    pass


# catalog
class Uncovered(DomainError):
    pass


# certifier
class ConditionFailed(DomainError):
    def __init__(self, which: str, at, message: str = ""):
        self.which = which
        self.at = at
        super().__init__(message or f"condition ({which}) failed at {at}")


class NonCertifiableEntry(DomainError):
    pass


# cubic moduli
class ZeroClass(DomainError):
    pass


class OutOfSextant(DomainError):
    pass


class TooFewArrows(DomainError):
    pass


class PreconditionFailed(DomainError):
    pass


class InvalidLift(DomainError):
    pass


# birational graph
class BoundTooSmall(DomainError):
    pass


class ExcludedSum(DomainError):
    pass


class Unreachable(InternalError):
    pass

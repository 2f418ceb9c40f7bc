"""Shared exception types."""


class CoxlefError(Exception):
    """Base class for all library errors."""


class NotIrreducible(CoxlefError):
    """Defining polynomial is reducible (or not squarefree) over the rationals."""


class NotIsolating(CoxlefError):
    """Interval does not isolate exactly one real root of the defining polynomial."""


class DivisionByZero(CoxlefError, ZeroDivisionError):
    """Division by the zero element of a number field."""


class FieldMismatch(CoxlefError):
    """Operands belong to different number fields."""


class DimensionMismatch(CoxlefError):
    """Vector/matrix/basis sizes are inconsistent."""


class UnsupportedType(CoxlefError):
    """Coxeter type outside the supported families."""


class BudgetExceeded(CoxlefError):
    """Computation refused or aborted because a size/time budget was exceeded."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class HilbertMismatch(CoxlefError):
    """Quotient-ring Hilbert function disagrees with the length generating function."""


class DegreeOutOfRange(CoxlefError):
    """Requested graded component does not exist."""


class LevelOutOfRange(CoxlefError):
    """Dihedral level k outside 1..m-2."""


class NotInvariant(CoxlefError):
    """Element is not fixed by the required subgroup."""


class ShapeUnsupported(CoxlefError):
    """Hilbert function shape does not admit the narrow consecutive-level test."""

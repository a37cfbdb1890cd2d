"""Exception types shared across the package."""


class LagrelError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatch(LagrelError, TypeError):
    """Two values from different fields met in one operation."""


class DivisionByZero(LagrelError, ZeroDivisionError):
    pass


class DimensionMismatch(LagrelError, ValueError):
    pass


class TypeMismatch(LagrelError, ValueError):
    """Arrow types (domain/codomain) do not line up."""


class IndexOutOfRange(LagrelError, IndexError):
    pass


class BudgetExceeded(LagrelError):
    """A brute-force enumeration would visit more points than allowed."""


class ParseError(LagrelError, ValueError):
    pass


class InvalidArity(LagrelError, ValueError):
    pass


class ContainsDiscard(LagrelError, ValueError):
    """The operation is only defined for discard-free diagrams."""


class NotInternal(LagrelError, ValueError):
    pass


class ZeroSymplecticPhase(LagrelError, ValueError):
    pass


class NotConnected(LagrelError, ValueError):
    pass


class ZeroEdge(LagrelError, ValueError):
    pass


class NotAPForm(LagrelError, ValueError):
    pass


class NotSymmetric(LagrelError, ValueError):
    pass


class DanglingNode(LagrelError, ValueError):
    pass

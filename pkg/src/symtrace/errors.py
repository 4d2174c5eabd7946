"""Exception types raised across the package."""


class SymtraceError(Exception):
    """Base class for all errors raised by symtrace."""


class NotPrime(SymtraceError, ValueError):
    pass


class BadCharacteristic(SymtraceError, ValueError):
    pass


class NoRootOfUnity(SymtraceError, ValueError):
    pass


class ContextMismatch(SymtraceError, TypeError):
    pass


class Unsupported(SymtraceError, NotImplementedError):
    pass


class EvenInput(SymtraceError, ValueError):
    pass


class ZeroScalar(SymtraceError, ValueError):
    pass


class ZeroParameter(SymtraceError, ValueError):
    pass


class BadPairing(SymtraceError, ValueError):
    pass


class PathDisagreement(SymtraceError, AssertionError):
    """Two independent computations of the same invariant disagreed."""


class WrongDegreeMod4(SymtraceError, ValueError):
    pass


class HypothesisViolated(SymtraceError, ValueError):
    pass


class AlgebraMismatch(SymtraceError, TypeError):
    pass


class DegenerateInput(SymtraceError, ValueError):
    pass


class OutOfRange(SymtraceError, ValueError):
    pass


class BudgetExceeded(SymtraceError, RuntimeError):
    pass


class PredictionError(SymtraceError, ArithmeticError):
    """A closed-form prediction produced a negative or fractional multiplicity."""


class ConsistencyError(SymtraceError, AssertionError):
    """A derived fact contradicts a claimed consequence."""

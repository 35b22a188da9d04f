"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`CweError`,
so callers (notably the CLI) can separate parameter problems from bugs.
"""


class CweError(Exception):
    """Base class for library errors."""


class ParameterError(CweError, ValueError):
    """Inputs violate a documented precondition."""


class NotPrime(ParameterError):
    pass


class NotPrimitive(ParameterError):
    pass


class CapExceeded(ParameterError):
    pass


class BadExponent(ParameterError):
    pass


class DegenerateQuadratic(ParameterError):
    pass


class MixedPrimes(CweError, ValueError):
    pass


class BudgetExceeded(CweError):
    pass


class ValueOutsideFamily(CweError, ArithmeticError):
    """A directly computed sum is not one of the values the closed forms allow."""


class NotBilinear(CweError, ArithmeticError):
    pass


class NonIntegralComposition(CweError, ArithmeticError):
    pass


class DegeneracyMismatch(CweError, ArithmeticError):
    pass

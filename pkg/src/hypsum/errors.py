"""Exception hierarchy for hypsum."""


class HypsumError(Exception):
    """Base class for every error raised by this package."""


class NotRational(HypsumError, ArithmeticError):
    """A PiVal still carries a nonzero power of pi."""


class InvalidSpec(HypsumError, ValueError):
    """A terminating series has a vanishing lower Pochhammer in range."""


class NumeratorPole(HypsumError, ArithmeticError):
    """A Gamma in the numerator of a closed form sits on a pole."""


class PoleAmbiguity(HypsumError, ArithmeticError):
    """Numerator and denominator Gammas hit poles together (0 * inf)."""


class InvalidParams(HypsumError, ValueError):
    pass


class PoleError(HypsumError, ValueError):
    pass


class InternalAlgebra(HypsumError, RuntimeError):
    pass


class UnsupportedShift(HypsumError, ValueError):
    pass


class DomainError(HypsumError, ValueError):
    pass

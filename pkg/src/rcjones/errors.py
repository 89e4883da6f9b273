"""Exception hierarchy shared by every module.

Computation errors map to CLI exit code 2, verification failures to 3.
"""


class RcJonesError(Exception):
    """Base class for all library errors."""


class BraidSyntaxError(RcJonesError, ValueError):
    pass


class PositionOutOfRange(RcJonesError, ValueError):
    pass


class AllCoefficientsZero(RcJonesError, ZeroDivisionError):
    pass


class NonzeroConstantTerm(RcJonesError, ValueError):
    pass


class MissingAssignment(RcJonesError, KeyError):
    pass


class InexactDivision(RcJonesError, ArithmeticError):
    pass


class ColorCountMismatch(RcJonesError, ValueError):
    pass


class NonPositiveColor(RcJonesError, ValueError):
    pass


class StateSpaceTooLarge(RcJonesError, ValueError):
    pass


class InterpolationInconsistent(RcJonesError, ArithmeticError):
    pass


class DegreeBoundViolated(RcJonesError, ArithmeticError):
    pass


class VanishingAlexander(RcJonesError, ValueError):
    pass


class JetCapExceeded(RcJonesError, ArithmeticError):
    pass


class DenominatorVanishesToOrder(RcJonesError, ArithmeticError):
    def __init__(self, order_reached: int, message: str = ""):
        self.order_reached = order_reached
        super().__init__(message or f"denominator vanishes through h^{order_reached}")


class NegativePowersSurvive(RcJonesError, ArithmeticError):
    def __init__(self, power: int, coefficient, message: str = ""):
        self.power = power
        self.coefficient = coefficient
        super().__init__(message or f"coefficient of h^{power} is {coefficient}, expected 0")


class NotAKnot(RcJonesError, ValueError):
    pass


class VerificationFailure(RcJonesError, AssertionError):
    pass

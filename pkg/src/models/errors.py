"""
Error types raised by the fracint library.

Two branches: InvalidInput for arguments outside the documented ranges
(the CLI exits with 2) and NumericalFailure for computations that could not
produce a trustworthy number (the CLI exits with 3).
"""


class FracIntError(Exception):
    """Base class for every library error"""


class InvalidInput(FracIntError):
    """An argument violates a documented precondition"""


class NumericalFailure(FracIntError):
    """A quadrature or solver could not deliver a usable result"""


# Parameter validation

class NonPositiveAlpha(InvalidInput):
    pass


class NonPositiveRho(InvalidInput):
    pass


class NonFiniteParameter(InvalidInput):
    pass


class BadDomain(InvalidInput):
    pass


class EtaTooSmall(InvalidInput):
    pass


class XOutOfDomain(InvalidInput):
    pass


class MuOutOfRange(InvalidInput):
    pass


class IncompatibleComposition(InvalidInput):
    pass


class MismatchedRhoOrSide(InvalidInput):
    pass


class UnsupportedReduction(InvalidInput):
    pass


class PreconditionViolated(InvalidInput):
    pass


class ArgsOutOfRange(InvalidInput):
    pass


# Special functions and quadrature arguments

class PoleArgument(InvalidInput):
    pass


class NonPositiveArgument(InvalidInput):
    pass


class ExponentOutOfRange(InvalidInput):
    pass


class NonIntegrableSingularity(InvalidInput):
    pass


class FunctionSpecSyntaxError(InvalidInput):
    """Malformed function text; `position` is the 0-based offending column"""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


# Numerical failures

class NonFiniteIntegrand(NumericalFailure):
    pass


class EigenFailure(NumericalFailure):
    pass


class DivergentTail(NumericalFailure):
    pass


class DivergentConstant(NumericalFailure):
    pass

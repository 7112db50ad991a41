"""Exception hierarchy shared by all dimkit modules."""


class DimkitError(ValueError):
    """Base class for domain errors raised by dimkit."""


class PoleError(DimkitError):
    """Argument sits on a pole of a gamma function (or of a closed form built from one)."""


class RegimeError(DimkitError):
    """Operation is not defined for the dimension regime of its argument."""


class DivergenceError(DimkitError):
    """An integral does not converge for the requested exponents."""


class DomainError(DimkitError):
    """Argument outside the domain of an operation (e.g. V_d at d = 0)."""


class ExtractionError(DimkitError):
    """Finite-part extraction cannot be performed reliably."""


class QuadratureError(DimkitError):
    """Quadrature failed to reach the requested tolerance.

    The best available estimate is attached as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result

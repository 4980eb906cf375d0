"""Exception types raised by the package."""


class CauchyError(Exception):
    """Base class for all package errors."""


class InvalidMeshError(CauchyError, ValueError):
    pass


class InvalidFunctionError(CauchyError, ValueError):
    pass


class ConfigError(CauchyError, ValueError):
    pass


class DataMismatchError(CauchyError, ValueError):
    pass


class DivergenceError(CauchyError, ArithmeticError):
    """A computation produced non-finite values.

    ``index`` is the time layer (forward solver) or iteration (minimizer)
    where the first non-finite value appeared.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ForwardDivergenceError(DivergenceError):
    pass


class MinimizerDivergenceError(DivergenceError):
    pass

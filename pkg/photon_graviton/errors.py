from typing import Optional


class SimulationError(Exception):
    """Base class for every error raised by photon_graviton"""


class ConfigurationError(SimulationError, ValueError):
    pass


class ModeLookupError(SimulationError, KeyError):

    def __str__(self):
        # KeyError quotes its argument, keep the plain message
        return str(self.args[0]) if self.args else ''


class DomainError(SimulationError, ValueError):
    pass


class RangeError(DomainError):
    pass


class PreconditionError(SimulationError, ValueError):
    pass


class ConvergenceError(PreconditionError):
    """
    A truncation guard failed. `required_n_max` is the smallest cutoff satisfying the guard.
    """

    def __init__(self, message: str, required_n_max: Optional[int] = None):
        if required_n_max is not None:
            message = f"{message} (requires n_max >= {required_n_max})"
        super().__init__(message)
        self.required_n_max = required_n_max


class ResourceError(SimulationError):
    pass


class NumericError(SimulationError, ArithmeticError):
    pass


class PerturbativeRangeWarning(UserWarning):
    pass

# app/utils/errors.py
from typing import List, Optional


class HardyError(Exception):
    """Base class for every error raised by the hardy-points services."""


# ------------------ Usage / lookup errors ------------------
class UnknownWeightError(HardyError, LookupError):
    def __init__(self, name: str, available: List[str]):
        self.name = name
        self.available = list(available)
        super().__init__(f"Unknown weight '{name}'. Available: {', '.join(self.available)}")


class UnknownFunctionError(HardyError, LookupError):
    def __init__(self, name: str, available: List[str]):
        self.name = name
        self.available = list(available)
        super().__init__(f"Unknown function '{name}'. Available: {', '.join(self.available)}")


class PairingError(HardyError, ValueError):
    """Function and weight do not belong together in the catalog."""


class InvalidPointsError(HardyError):
    """Point configuration is not an element of R_n (n >= 2, finite, strictly increasing)."""


class KernelSingularityError(HardyError, ArithmeticError):
    """Derivative of the Green kernel requested at its singularity x = 0."""


# ------------------ Numerical failures ------------------
class NumericalError(HardyError):
    """Numerical failure; the CLI exits with code 3 on these."""


class ConditioningError(NumericalError):
    pass


class OrderingError(NumericalError):
    pass


class StallError(NumericalError):
    pass


class NumericalOverflowError(NumericalError, OverflowError):
    pass


class ConvergenceError(NumericalError):
    def __init__(self, message: str, trace: Optional[list] = None):
        super().__init__(message)
        self.trace = trace or []


class EvaluationError(NumericalError):
    def __init__(self, message: str, x: float):
        super().__init__(f"{message} (x = {x!r})")
        self.x = x

"""
Errores del paquete mstab.
"""

from typing import Optional


class MstabError(Exception):
    """Base class for every error raised by the library"""


class DomainError(MstabError, ValueError):
    """Argument outside the domain of an operation"""


class AdmissibilityError(MstabError, ValueError):
    """Parameter functions leave the admissible range of a kernel family"""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class SingularEvaluationError(MstabError, ArithmeticError):
    """Kernel evaluated exactly at one of its singular points"""

    def __init__(self, message: str, index: Optional[int] = None):
        self.index = index
        super().__init__(message)


class DegenerateDrawError(MstabError, ArithmeticError):
    """A series draw produced a non-finite term or sum"""

    def __init__(self, message: str, term_index: Optional[int] = None):
        self.term_index = term_index
        super().__init__(message)


class NonIntegrableKernelError(MstabError, ArithmeticError):
    """Norm integral diverged past the overflow guard"""


class AccuracyError(MstabError, RuntimeError):
    """Quadrature did not reach the requested tolerance"""

    def __init__(self, message: str, estimate: float, error_bound: float):
        self.estimate = estimate
        self.error_bound = error_bound
        super().__init__(f"{message} (estimate={estimate:.6g}, error_bound={error_bound:.3g})")

"""
Error hierarchy for nhscope
Every failure raised by the library derives from ScopeError
"""

from typing import Any, Dict, Optional


class ScopeError(Exception):
    """Base class for all nhscope errors"""


class InvalidSpecError(ScopeError, ValueError):
    """Model parameters are out of range or inconsistent"""


class InvalidRegimeError(InvalidSpecError):
    """Operation needs |g| < t2 (similarity transform exists)"""


class IngestionError(ScopeError, ValueError):
    """Matrix file could not be parsed"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidInputError(ScopeError, ValueError):
    """Arguments to a numerical routine are unusable"""


class NumericalFailureError(ScopeError, RuntimeError):
    """Dense eigensolver did not converge"""

    def __init__(self, message: str, dim: int, diagnostics: Optional[Dict[str, Any]] = None):
        self.dim = dim
        self.diagnostics = diagnostics or {}
        super().__init__(f"{message} (dim={dim})")


class PairingError(ScopeError):
    """Left and right eigenvectors could not be matched"""

    def __init__(self, message: str, distance: float = float("nan")):
        self.distance = distance
        super().__init__(message)


class ConsistencyError(ScopeError, RuntimeError):
    """A computed quantity left its mathematically allowed range"""


class EdgeModeError(ScopeError):
    """Zero-mode extraction did not find exactly two modes"""

    def __init__(self, message: str, count: int):
        self.count = count
        super().__init__(message)


class NoEdgeModesError(EdgeModeError):
    """Fewer than two states below the zero-mode tolerance"""


class AmbiguousModesError(EdgeModeError):
    """More than two states below the zero-mode tolerance"""


class StructureError(ScopeError):
    """Matrix does not factor as M^-1 H0 with positive diagonal M"""


class ConfigError(ScopeError, ValueError):
    """Run configuration failed validation"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(message)


class SweepPointError(ScopeError):
    """A grid point of a sweep failed; wraps the original cause"""

    def __init__(self, index: int, param: float, cause: BaseException):
        self.index = index
        self.param = param
        self.cause = cause
        super().__init__(
            f"sweep failed at grid point {index} (param={param:.10g}): "
            f"{type(cause).__name__}: {cause}"
        )

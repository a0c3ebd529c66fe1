"""Exception hierarchy shared by every numerical module"""

from typing import Optional


class OneBitError(Exception):
    """Base class for all library errors"""


class DomainError(OneBitError, ValueError):
    """An argument lies outside the domain of the operation"""


class BoundarySaddleError(OneBitError):
    """The saddle-point map was evaluated on the boundary q = 1"""


class ConvergenceError(OneBitError):
    """Fixed-point iteration did not reach the requested tolerance"""

    def __init__(self, message: str, q: float, E: float, residual: float, iterations: int):
        super().__init__(message)
        self.q = q
        self.E = E
        self.residual = residual
        self.iterations = iterations

    def __str__(self) -> str:
        return (
            f"{self.args[0]} (q={self.q:.6g}, E={self.E:.6g}, "
            f"residual={self.residual:.3g}, iterations={self.iterations})"
        )


class BracketError(OneBitError):
    """A root finder could not bracket a sign change"""


class FeasibilityError(OneBitError):
    """An exhaustive enumeration would be too large"""


class QuadratureError(OneBitError):
    """An integrand produced an invalid value at a quadrature node"""

    def __init__(self, message: str, node: Optional[float] = None):
        super().__init__(message)
        self.node = node


__all__ = [
    "OneBitError",
    "DomainError",
    "BoundarySaddleError",
    "ConvergenceError",
    "BracketError",
    "FeasibilityError",
    "QuadratureError",
]

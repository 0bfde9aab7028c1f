from typing import Any, Optional

import numpy as np


class HessianQuotientError(Exception):
    """Represents the base of every error raised by this package."""


class DomainError(HessianQuotientError, ValueError):
    """Represents an order or index outside of its admissible range."""


class SingularQuotientError(HessianQuotientError, ZeroDivisionError):
    """Represents a Hessian quotient whose denominator σ_l vanishes."""


class GeometryError(HessianQuotientError):
    """Represents a degenerate geometric input (e.g. a metric which is not positive definite)."""


class _NodeSetError(HessianQuotientError):
    def __init__(self, message: str, nodes: Any = None, margin: Optional[float] = None, *args: object) -> None:
        """
        :param message: The human-readable description.
        :type message: str
        :param nodes: The offending node indices, if known.
        :type nodes: Any
        :param margin: The worst margin among the offending nodes.
        :type margin: Optional[float]
        """
        super().__init__(message, *args)
        self.nodes = np.atleast_1d(np.asarray(nodes, dtype=int)) if nodes is not None else np.empty(0, dtype=int)
        self.margin = margin

    def __str__(self) -> str:
        text = super().__str__()
        if self.nodes.size:
            text += f" (nodes: {self.nodes[:8].tolist()}{'...' if self.nodes.size > 8 else ''})"
        if self.margin is not None:
            text += f" (margin: {self.margin:.3e})"
        return text


class AdmissibilityError(_NodeSetError):
    """Represents principal curvatures which left the Garding cone Γ_k."""


class NonSpacelikeError(_NodeSetError):
    """Represents a graph which is not spacelike, i.e. |Du|_σ ≥ u somewhere."""


class InvalidPsiError(HessianQuotientError, ValueError):
    """Represents a right-hand side ψ which is not strictly positive."""


class UnsupportedDerivativeError(HessianQuotientError):
    """Represents a ϑ-derivative request on a family without analytic ϑ-dependence."""


class InvalidBoundaryDataError(HessianQuotientError, ValueError):
    """Represents Dirichlet data which is not strictly positive or not spacelike on the boundary."""


class ConfigError(HessianQuotientError):
    """Represents an invalid run configuration."""


class WriterError(HessianQuotientError):
    """Represents a failure while writing an output file."""

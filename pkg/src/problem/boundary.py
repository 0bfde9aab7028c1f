from typing import Optional, Sequence

import numpy as np

from ..errors import DomainError
from ..geometry.hypgeom import chart_metric, embed, lorentz_inner, tangent_frame


class BoundaryData:
    """
    Represents Dirichlet data φ = ⟨a, x⟩_L + b, the restriction of a Lorentz-affine
    function of the ambient space to the hyperboloid. A constant is the case a = 0.
    """

    __slots__ = ("_a", "_b")

    def __init__(self, b: float, a: Optional[Sequence[float]] = None) -> None:
        """
        :param b: The constant part.
        :type b: float
        :param a: The ambient vector, of length n+1. ``None`` means zero.
        :type a: Sequence[float]
        """
        self._b = float(b)
        self._a = None if a is None else np.asarray(a, dtype=float)
        if self._a is not None and self._a.ndim != 1:
            raise DomainError("The ambient vector a must be one-dimensional")

    @classmethod
    def constant(cls, c: float) -> "BoundaryData":
        return cls(c)

    @property
    def a(self) -> Optional[np.ndarray]:
        return self._a

    @property
    def b(self) -> float:
        return self._b

    @property
    def is_constant(self) -> bool:
        return self._a is None or not np.any(self._a)

    def __call__(self, y: np.ndarray) -> np.ndarray:
        """
        Evaluate φ at chart points.
        """
        y = np.asarray(y, dtype=float)
        if self.is_constant:
            return np.full(y.shape[:-1], self._b)
        self._check_dimension(y)
        return lorentz_inner(self._a, embed(y)) + self._b

    def _check_dimension(self, y: np.ndarray) -> None:
        if self._a.shape[-1] != y.shape[-1] + 1:
            raise DomainError(f"The ambient vector needs {y.shape[-1] + 1} entries, got {self._a.shape[-1]}")

    def gradient(self, y: np.ndarray) -> np.ndarray:
        """
        The chart gradient ∂_iφ = ⟨a, ∂_i x⟩_L.
        """
        y = np.asarray(y, dtype=float)
        if self.is_constant:
            return np.zeros(y.shape)
        self._check_dimension(y)
        return lorentz_inner(self._a, tangent_frame(y))

    def spacelike_margin(self, y: np.ndarray) -> np.ndarray:
        """
        1 - |Dφ|_σ/φ at chart points, positive where the graph of φ is spacelike.
        """
        y = np.asarray(y, dtype=float)
        gradient = self.gradient(y)
        _, sigma_inv = chart_metric(y)
        norm = np.sqrt(np.einsum("...i,...ij,...j->...", gradient, sigma_inv, gradient))
        return 1.0 - norm / self(y)

    def blend(self, c0: float, t: float) -> "BoundaryData":
        """
        The homotopy data (1-t)c₀ + tφ, again Lorentz-affine.
        """
        a = None if self.is_constant else t * self._a
        return BoundaryData((1.0 - t) * c0 + t * self._b, a)

    def __repr__(self) -> str:
        if self.is_constant:
            return f"BoundaryData(constant={self._b})"
        return f"BoundaryData(a={self._a.tolist()}, b={self._b})"

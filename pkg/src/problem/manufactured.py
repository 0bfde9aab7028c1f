"""
The manufactured solution u* = base + amplitude·√(1+|y|²).

Its covariant jet is known in closed form (Du_i = amplitude·y_i/s, D²u = amplitude·s·σ),
so ψ* = σ_k/σ_l[u*] is tabulated on a grid without any discretization error.
"""

import numpy as np

from ..algebra.symfun import hessian_quotient
from ..geometry.graphgeom import GraphPointState, shape_data
from ..geometry.hypgeom import ChartPoint
from .boundary import BoundaryData
from .psispec import PsiFamily, PsiSpec, TabulatedField


class ManufacturedSolution:
    """
    Represents the manufactured solution and the data it induces.
    """

    __slots__ = ("_base", "_amplitude")

    def __init__(self, base: float = 2.0, amplitude: float = 0.1) -> None:
        self._base = float(base)
        self._amplitude = float(amplitude)

    @property
    def base(self) -> float:
        return self._base

    @property
    def amplitude(self) -> float:
        return self._amplitude

    def value(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        return self._base + self._amplitude * np.sqrt(1.0 + np.sum(y**2, axis=-1))

    def state(self, point: ChartPoint) -> GraphPointState:
        """
        The exact covariant 2-jet at the given point(s).
        """
        y = point.y
        s = np.sqrt(1.0 + np.sum(y**2, axis=-1))
        du = self._amplitude * y / s[..., None]
        d2u = self._amplitude * s[..., None, None] * point.sigma
        return GraphPointState(self.value(y), du, d2u, point)

    def boundary(self) -> BoundaryData:
        """
        u* itself as Lorentz-affine data: ⟨(0, .., 0, -amplitude), x⟩_L + base.
        """
        n = 2
        return BoundaryData(self._base, [0.0] * n + [-self._amplitude])

    def psi(self, grid, k: int = 2, l: int = 0) -> PsiSpec:
        """
        ψ* = σ_k/σ_l[u*] at the nodes of ``grid``, as a tabulated right-hand side.
        """
        shape = shape_data(self.state(grid.points))
        values = np.asarray(hessian_quotient(shape.lam, k, l))
        return PsiSpec(PsiFamily.TABULATED, table=TabulatedField(grid, values), k=k, l=l)

    def __repr__(self) -> str:
        return f"ManufacturedSolution(base={self._base}, amplitude={self._amplitude})"

"""
Prescribed right-hand sides ψ(x, u, ϑ) and their structural conditions.

The ϑ-dependent families are evaluated at |ϑ| so that they stay positive
under the convention ϑ = -u/v < 0.
"""

import enum
from typing import Optional, Sequence, Union

import numpy as np
from loguru import logger as _default_logger

from ..errors import DomainError, InvalidPsiError, UnsupportedDerivativeError
from ..geometry.hypgeom import ChartPoint, geodesic_radius
from ..logging import Logger

ArrayLike = Union[np.ndarray, float]


class PsiFamily(str, enum.Enum):
    """
    Represents the available right-hand side families.
    """

    CONSTANT = "constant"
    POWER_THETA = "power_theta"
    EXP_THETA = "exp_theta"
    TABULATED = "tabulated"


class TabulatedField:
    """
    Represents nodal values on a solver grid, interpolated bilinearly in (ρ, angle).
    """

    __slots__ = ("_grid", "_values")

    def __init__(self, grid, values: np.ndarray) -> None:
        """
        :param grid: The solver grid the values live on.
        :type grid: src.numerics.discretize.Grid
        :param values: One value per grid node.
        :type values: np.ndarray
        """
        values = np.asarray(values, dtype=float)
        if values.shape != (grid.size,):
            raise DomainError(f"Expected {grid.size} tabulated values, got shape {values.shape}")
        self._grid = grid
        self._values = values

    @property
    def grid(self):
        return self._grid

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __call__(self, y: np.ndarray) -> np.ndarray:
        return self._grid.interpolate(self._values, y)


class PsiSpec:
    """
    Represents a declarative right-hand side ψ(x, u, ϑ).

        constant:     ψ = h(r)
        power_theta:  ψ = |ϑ|^p h(r)
        exp_theta:    ψ = e^{p|ϑ|/u} h(r)
        tabulated:    ψ = table(x)

    h(r) is a polynomial in the geodesic radius r, given by its coefficients
    in increasing degree. A blended spec evaluates (1-t)ψ₀ + tψ.
    """

    __slots__ = ("_family", "_p", "_h", "_table", "_k", "_l", "_base", "_weight")

    def __init__(
        self,
        family: Union[PsiFamily, str],
        p: float = 0.0,
        h: Union[float, Sequence[float]] = 1.0,
        table: Optional[TabulatedField] = None,
        k: int = 2,
        l: int = 0,
        base: float = 0.0,
        weight: float = 1.0,
    ) -> None:
        """
        Initialize the right-hand side.

        :param family: The family.
        :type family: PsiFamily
        :param p: The exponent of the ϑ-dependent families.
        :type p: float
        :param h: The coefficients of the radial profile h(r), or a constant.
        :type h: float or Sequence[float]
        :param table: The nodal values of the tabulated family.
        :type table: TabulatedField
        :param k: The numerator order used by the structural checks.
        :type k: int
        :param l: The denominator order used by the structural checks.
        :type l: int
        :param base: The constant ψ₀ of a blended spec.
        :type base: float
        :param weight: The homotopy parameter t of a blended spec.
        :type weight: float
        :raises DomainError: If the parameters do not fit the family.
        """
        self._family = PsiFamily(family)
        self._p = float(p)
        self._h = np.atleast_1d(np.asarray(h, dtype=float))
        if self._h.ndim != 1 or self._h.size == 0:
            raise DomainError("The radial profile needs at least one coefficient")
        if self._family is PsiFamily.TABULATED and table is None:
            raise DomainError("The tabulated family needs a table")
        if not 0 <= l < k:
            raise DomainError(f"Quotient orders must satisfy 0 <= l < k, got k={k}, l={l}")
        self._table = table
        self._k = k
        self._l = l
        self._base = float(base)
        self._weight = float(weight)

    @property
    def family(self) -> PsiFamily:
        return self._family

    @property
    def p(self) -> float:
        return self._p

    @property
    def h(self) -> np.ndarray:
        return self._h

    @property
    def table(self) -> Optional[TabulatedField]:
        return self._table

    @property
    def k(self) -> int:
        return self._k

    @property
    def l(self) -> int:
        return self._l

    @property
    def base(self) -> float:
        return self._base

    @property
    def weight(self) -> float:
        return self._weight

    @property
    def has_theta_derivative(self) -> bool:
        """
        Whether ψ has an analytic ϑ-derivative.
        """
        return self._family is not PsiFamily.TABULATED

    def with_orders(self, k: int, l: int) -> "PsiSpec":
        """
        The same ψ, checked against another quotient (k, l).
        """
        return PsiSpec(self._family, self._p, self._h, self._table, k, l, self._base, self._weight)

    def __repr__(self) -> str:
        text = f"PsiSpec(family={self._family.value}, p={self._p}, h={self._h.tolist()}, k={self._k}, l={self._l}"
        if self._weight != 1.0:
            text += f", base={self._base}, t={self._weight}"
        return text + ")"


def blend(spec: PsiSpec, base_value: float, t: float) -> PsiSpec:
    """
    The homotopy right-hand side (1-t)ψ₀ + tψ with constant ψ₀.

    :raises DomainError: If t is outside [0, 1].
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"Homotopy parameter t={t} is outside [0, 1]")
    return PsiSpec(spec.family, spec.p, spec.h, spec.table, spec.k, spec.l, base_value, t)


def _points(x: Union[ChartPoint, np.ndarray]) -> np.ndarray:
    return x.y if isinstance(x, ChartPoint) else np.asarray(x, dtype=float)


def _radial_profile(spec: PsiSpec, y: np.ndarray) -> np.ndarray:
    # polyval wants the leading coefficient first
    return np.polyval(spec.h[::-1], np.asarray(geodesic_radius(y)))


def _raw(spec: PsiSpec, x, u: ArrayLike, theta: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    # ψ and ∂ψ/∂ϑ of the unblended family
    y = _points(x)
    u = np.asarray(u, dtype=float)
    theta = np.asarray(theta, dtype=float)
    a = np.abs(theta)
    if spec.family is PsiFamily.TABULATED:
        value = spec.table(y)
        return value, np.full(np.shape(value), np.nan)
    h = _radial_profile(spec, y)
    if spec.family is PsiFamily.CONSTANT:
        value = h * np.ones(np.broadcast(u, theta).shape)
        return value, np.zeros(np.shape(value))
    if spec.family is PsiFamily.POWER_THETA:
        value = a**spec.p * h
        # d|ϑ|/dϑ = sign(ϑ)
        return value, np.sign(theta) * spec.p * a ** (spec.p - 1.0) * h
    value = np.exp(spec.p * a / u) * h
    return value, np.sign(theta) * (spec.p / u) * value


def _evaluate(spec: PsiSpec, x, u: ArrayLike, theta: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    value, derivative = _raw(spec, x, u, theta)
    if spec.weight != 1.0:
        value = (1.0 - spec.weight) * spec.base + spec.weight * value
        derivative = spec.weight * derivative
    return value, derivative


def _scalar(value: np.ndarray):
    value = np.asarray(value)
    return value.item() if value.ndim == 0 else value


def eval_psi(spec: PsiSpec, x: Union[ChartPoint, np.ndarray], u: ArrayLike, theta: ArrayLike):
    """
    Evaluate ψ(x, u, ϑ).

    :param spec: The right-hand side.
    :type spec: PsiSpec
    :param x: The chart point(s).
    :type x: ChartPoint
    :param u: The function value(s), positive.
    :type u: float or np.ndarray
    :param theta: The support quantity ϑ.
    :type theta: float or np.ndarray
    :raises InvalidPsiError: If ψ is not strictly positive and finite.
    :return: ψ, broadcast over the inputs.
    :rtype: float or np.ndarray
    """
    value, _ = _evaluate(spec, x, u, theta)
    bad = ~np.isfinite(value) | (value <= 0)
    if np.any(bad):
        raise InvalidPsiError(
            f"ψ must be strictly positive, got min {np.nanmin(value):.6g} at {int(np.count_nonzero(bad))} point(s)"
        )
    return _scalar(value)


def dpsi_dtheta_power(spec: PsiSpec, x: Union[ChartPoint, np.ndarray], u: ArrayLike, theta: ArrayLike):
    """
    The analytic derivative ∂(ψ^{1/(k-l)})/∂ϑ.

    :raises UnsupportedDerivativeError: If ψ is tabulated.
    :raises InvalidPsiError: If ψ is not strictly positive.
    """
    if not spec.has_theta_derivative:
        raise UnsupportedDerivativeError(f"The {spec.family.value} family has no analytic ϑ-derivative")
    value, derivative = _evaluate(spec, x, u, theta)
    if np.any(value <= 0):
        raise InvalidPsiError("ψ must be strictly positive")
    exponent = 1.0 / (spec.k - spec.l)
    return _scalar(exponent * value ** (exponent - 1.0) * derivative)


class StructuralReport:
    """
    Represents the worst structural margins of ψ^{1/(k-l)} over a set of samples.
    """

    __slots__ = ("condition_margin", "convexity_margin", "samples", "tolerance")

    def __init__(self, condition_margin: float, convexity_margin: float, samples: int, tolerance: float) -> None:
        self.condition_margin = condition_margin
        self.convexity_margin = convexity_margin
        self.samples = samples
        self.tolerance = tolerance

    @property
    def condition_holds(self) -> bool:
        """
        Whether ∂f/∂ϑ·ϑ >= f holds, f = ψ^{1/(k-l)}.
        """
        return self.condition_margin >= -self.tolerance

    @property
    def convexity_holds(self) -> bool:
        """
        Whether f is convex in ϑ.
        """
        return self.convexity_margin >= -self.tolerance

    @property
    def holds(self) -> bool:
        return self.condition_holds and self.convexity_holds

    def to_dict(self) -> dict:
        return {
            "condition_margin": self.condition_margin,
            "convexity_margin": self.convexity_margin,
            "samples": self.samples,
            "condition_holds": self.condition_holds,
            "convexity_holds": self.convexity_holds,
        }

    def __repr__(self) -> str:
        return (
            f"StructuralReport(condition={self.condition_margin:.3e}, "
            f"convexity={self.convexity_margin:.3e}, samples={self.samples})"
        )


def check_structural_conditions(
    spec: PsiSpec,
    x: Union[ChartPoint, np.ndarray],
    u: ArrayLike,
    theta: ArrayLike,
    step: float = 1e-3,
    tolerance: float = 1e-8,
    logger: Logger = None,
) -> StructuralReport:
    """
    Check the structural hypotheses on ψ over a set of samples (x, u, ϑ):

        (a) ∂f/∂ϑ·ϑ - f >= 0,   f = ψ^{1/(k-l)},
        (b) f is convex in ϑ, by a central second difference with the given step.

    Margins are relative to max(1, f). A violation is logged as a warning and is not fatal.

    :raises UnsupportedDerivativeError: If ψ is tabulated.
    :rtype: StructuralReport
    """
    logger = logger or _default_logger
    exponent = 1.0 / (spec.k - spec.l)
    u, theta = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(theta, dtype=float))
    f = np.asarray(eval_psi(spec, x, u, theta)) ** exponent
    scale = np.maximum(1.0, f)
    derivative = np.asarray(dpsi_dtheta_power(spec, x, u, theta))
    condition = (derivative * theta - f) / scale
    # keep the stencil on the ϑ < 0 side
    step = np.minimum(step, 0.5 * np.abs(theta))
    upper = np.asarray(eval_psi(spec, x, u, theta + step)) ** exponent
    lower = np.asarray(eval_psi(spec, x, u, theta - step)) ** exponent
    convexity = (upper - 2.0 * f + lower) / step**2 / scale
    report = StructuralReport(float(np.min(condition)), float(np.min(convexity)), int(f.size), tolerance)
    if not report.holds:
        logger.warning(
            f"ψ ({spec.family.value}, p={spec.p}) fails the structural conditions: "
            f"condition margin {report.condition_margin:.3e}, convexity margin {report.convexity_margin:.3e}"
        )
    return report

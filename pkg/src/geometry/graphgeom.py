"""
Pointwise geometry of a spacelike radial graph {u(x)·x : x ∈ M} over ℋⁿ(1).

All quantities are computed from covariant data (u, Du, D²u) at chart points;
batches of nodes are handled along the leading axes.
"""

from typing import Union

import numpy as np

from ..algebra.symfun import EigenTuple
from ..errors import GeometryError, NonSpacelikeError
from .hypgeom import ChartPoint, embed, tangent_frame

ArrayLike = Union[np.ndarray, list, tuple, float]


class GraphPointState:
    """
    Represents the covariant 2-jet of u at a point (or a batch of points).
    """

    __slots__ = ("_u", "_du", "_d2u", "_point")

    def __init__(self, u: ArrayLike, du: ArrayLike, d2u: ArrayLike, point: ChartPoint) -> None:
        """
        Initialize the state.

        :param u: The function value.
        :type u: float or np.ndarray
        :param du: The covariant gradient u_i (lower index).
        :type du: np.ndarray
        :param d2u: The covariant Hessian u_ij.
        :type d2u: np.ndarray
        :param point: The chart point.
        :type point: ChartPoint
        """
        self._u = np.asarray(u, dtype=float)
        self._du = np.asarray(du, dtype=float)
        self._d2u = np.asarray(d2u, dtype=float)
        self._point = point

    @property
    def u(self) -> np.ndarray:
        return self._u

    @property
    def du(self) -> np.ndarray:
        return self._du

    @property
    def d2u(self) -> np.ndarray:
        return self._d2u

    @property
    def point(self) -> ChartPoint:
        return self._point

    @property
    def du_raised(self) -> np.ndarray:
        """
        The gradient with raised index, u^i = σ^{ij}u_j.
        """
        return np.einsum("...ij,...j->...i", self._point.sigma_inv, self._du)

    @property
    def gradient_norm_squared(self) -> np.ndarray:
        """
        |Du|²_σ = σ^{ij}u_iu_j.
        """
        return np.sum(self.du_raised * self._du, axis=-1)

    def __repr__(self) -> str:
        return f"GraphPointState(u={self._u!r}, du={self._du!r})"


class ShapeData:
    """
    Represents the shape of the graph at a point: v, g, g⁻¹, h, λ and ϑ.
    """

    __slots__ = ("v", "g", "g_inv", "h", "lam", "theta")

    def __init__(
        self,
        v: np.ndarray,
        g: np.ndarray,
        g_inv: np.ndarray,
        h: np.ndarray,
        lam: EigenTuple,
        theta: np.ndarray,
    ) -> None:
        self.v = v
        self.g = g
        self.g_inv = g_inv
        self.h = h
        self.lam = lam
        self.theta = theta

    def __repr__(self) -> str:
        return f"ShapeData(v={self.v!r}, lam={self.lam!r}, theta={self.theta!r})"


def _scalar(value: np.ndarray):
    value = np.asarray(value)
    return value.item() if value.ndim == 0 else value


def spacelike_margin(state: GraphPointState):
    """
    The ρ-margin 1 - |Du|_σ/u, positive iff the state is spacelike.
    Non-positive u yields -inf.
    """
    u = state.u
    norm = np.sqrt(state.gradient_norm_squared)
    with np.errstate(divide="ignore", invalid="ignore"):
        margin = np.where(u > 0, 1.0 - norm / np.where(u > 0, u, 1.0), -np.inf)
    return _scalar(margin)


def _require_spacelike(state: GraphPointState) -> np.ndarray:
    u = state.u
    gap = u**2 - state.gradient_norm_squared
    bad = (u <= 0) | (gap <= 0)
    if np.any(bad):
        margin = np.asarray(spacelike_margin(state))
        raise NonSpacelikeError(
            "The graph is not spacelike, |Du|_σ >= u",
            nodes=np.flatnonzero(np.asarray(bad).reshape(-1)),
            margin=float(np.min(margin)),
        )
    return gap


def spacelike_v(state: GraphPointState):
    """
    v = √(1 - |Du|²_σ/u²).

    :raises NonSpacelikeError: If |Du|²_σ >= u² at some node.
    :return: v in (0, 1], equal to 1 iff Du = 0.
    """
    gap = _require_spacelike(state)
    return _scalar(np.sqrt(gap) / state.u)


def induced_metric(state: GraphPointState) -> tuple[np.ndarray, np.ndarray]:
    """
    The induced metric of the graph and its inverse,

        g_ij = u²σ_ij - u_iu_j,   g^{ij} = (σ^{ij} + u^iu^j/(u²v²))/u².

    :raises NonSpacelikeError: If the state is not spacelike.
    """
    gap = _require_spacelike(state)
    u = state.u[..., None, None]
    du = state.du
    raised = state.du_raised
    g = u**2 * state.point.sigma - du[..., :, None] * du[..., None, :]
    # u²v² = u² - |Du|²
    g_inv = (state.point.sigma_inv + raised[..., :, None] * raised[..., None, :] / gap[..., None, None]) / u**2
    return g, g_inv


def second_fundamental_form(state: GraphPointState) -> np.ndarray:
    """
    h_ij = (u_ij + uσ_ij - 2u_iu_j/u)/v.

    :raises NonSpacelikeError: If the state is not spacelike.
    """
    v = np.asarray(spacelike_v(state))[..., None, None]
    u = state.u[..., None, None]
    du = state.du
    return (state.d2u + u * state.point.sigma - 2.0 * du[..., :, None] * du[..., None, :] / u) / v


def principal_curvatures(g: ArrayLike, g_inv: ArrayLike, h: ArrayLike) -> EigenTuple:
    """
    The eigenvalues of g⁻¹h, sorted in descending order.

    With g = L Lᵀ the eigenvalues are those of the symmetric matrix L⁻¹ h L⁻ᵀ.

    :param g: The metric, positive definite.
    :type g: np.ndarray
    :param g_inv: The inverse metric, unused by the reduction and kept for callers holding both.
    :type g_inv: np.ndarray
    :param h: The second fundamental form, symmetric.
    :type h: np.ndarray
    :raises GeometryError: If g is not positive definite.
    :rtype: EigenTuple
    """
    g = np.asarray(g, dtype=float)
    h = np.asarray(h, dtype=float)
    try:
        factor = np.linalg.cholesky(g)
    except np.linalg.LinAlgError as e:
        raise GeometryError("The metric g is not positive definite") from e
    left = np.linalg.solve(factor, h)
    reduced = np.linalg.solve(factor, np.swapaxes(left, -1, -2))
    reduced = 0.5 * (reduced + np.swapaxes(reduced, -1, -2))
    eigenvalues = np.linalg.eigvalsh(reduced)[..., ::-1]
    return EigenTuple(np.ascontiguousarray(eigenvalues))


def support_theta(state: GraphPointState):
    """
    The support quantity ϑ = -u/v, always <= -u < 0.

    :raises NonSpacelikeError: If the state is not spacelike.
    """
    return _scalar(-state.u / np.asarray(spacelike_v(state)))


def unit_normal(state: GraphPointState) -> np.ndarray:
    """
    The future-directed timelike unit normal ν = (x + u^j∂_jx/u)/v in ℝⁿ⁺¹₁.

    :raises NonSpacelikeError: If the state is not spacelike.
    """
    v = np.asarray(spacelike_v(state))
    y = state.point.y
    frame = tangent_frame(y)
    tangential = np.einsum("...j,...ja->...a", state.du_raised, frame)
    return (embed(y) + tangential / state.u[..., None]) / v[..., None]


def shape_data(state: GraphPointState) -> ShapeData:
    """
    Run the full pointwise pipeline: v, g, g⁻¹, h, λ and ϑ.

    :raises NonSpacelikeError: If the state is not spacelike.
    :rtype: ShapeData
    """
    v = np.asarray(spacelike_v(state))
    g, g_inv = induced_metric(state)
    h = second_fundamental_form(state)
    lam = principal_curvatures(g, g_inv, h)
    theta = -state.u / v
    return ShapeData(_scalar(v), g, g_inv, h, lam, _scalar(theta))

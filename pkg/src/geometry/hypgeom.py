"""
The hyperbolic space ℋⁿ(1) as the upper unit hyperboloid of ℝⁿ⁺¹₁.

A single global chart is used: y ↦ (y, √(1+|y|²)). Every function accepts a
single point (shape (n,)) or a batch of points (shape (..., n)).
"""

from typing import Union

import numpy as np

ArrayLike = Union[np.ndarray, list, tuple]


def _as_points(y: ArrayLike) -> np.ndarray:
    return np.asarray(y, dtype=float)


def _height(y: np.ndarray) -> np.ndarray:
    return np.sqrt(1.0 + np.sum(y**2, axis=-1))


def lorentz_inner(x: ArrayLike, z: ArrayLike) -> np.ndarray:
    """
    The Lorentz inner product ⟨x, z⟩_L = x₁z₁ + ... + x_nz_n - x_{n+1}z_{n+1}.
    """
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    return np.sum(x[..., :-1] * z[..., :-1], axis=-1) - x[..., -1] * z[..., -1]


def embed(y: ArrayLike) -> np.ndarray:
    """
    Map chart coordinates to the hyperboloid.

    :param y: The chart coordinates.
    :type y: np.ndarray
    :return: x = (y, √(1+|y|²)), with ⟨x, x⟩_L = -1 and x_{n+1} > 0.
    :rtype: np.ndarray
    """
    y = _as_points(y)
    return np.concatenate([y, _height(y)[..., None]], axis=-1)


def tangent_frame(y: ArrayLike) -> np.ndarray:
    """
    The coordinate tangent vectors ∂_i x = (e_i, y_i/s), stacked along axis -2.
    """
    y = _as_points(y)
    n = y.shape[-1]
    s = _height(y)
    frame = np.zeros(y.shape[:-1] + (n, n + 1))
    frame[..., :, :n] = np.eye(n)
    frame[..., :, n] = y / s[..., None]
    return frame


def chart_metric(y: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    """
    The pullback of the Lorentz metric through :func:`embed`.

    :return: σ_ij = δ_ij - y_iy_j/(1+|y|²) and its inverse σ^{ij} = δ_ij + y_iy_j.
    :rtype: tuple[np.ndarray, np.ndarray]
    """
    y = _as_points(y)
    n = y.shape[-1]
    outer = y[..., :, None] * y[..., None, :]
    s2 = 1.0 + np.sum(y**2, axis=-1)
    sigma = np.eye(n) - outer / s2[..., None, None]
    sigma_inv = np.eye(n) + outer
    return sigma, sigma_inv


def christoffels(y: ArrayLike) -> np.ndarray:
    """
    The Christoffel symbols of the chart metric, indexed ``[..., k, i, j]`` for Γ^k_ij.

    For this chart they reduce to Γ^k_ij = -y_k σ_ij.
    """
    y = _as_points(y)
    sigma, _ = chart_metric(y)
    return -y[..., :, None, None] * sigma[..., None, :, :]


def geodesic_radius(y: ArrayLike) -> np.ndarray:
    """
    The hyperbolic distance from the pole, r = arcsinh(|y|).
    """
    y = _as_points(y)
    radius = np.arcsinh(np.sqrt(np.sum(y**2, axis=-1)))
    return radius.item() if radius.ndim == 0 else radius


def lorentz_distance(x: ArrayLike, z: ArrayLike) -> np.ndarray:
    """
    The hyperbolic distance arccosh(-⟨x, z⟩_L) between two points of the hyperboloid.
    """
    # -⟨x, z⟩_L >= 1 on the hyperboloid up to round-off
    distance = np.arccosh(np.maximum(1.0, -lorentz_inner(x, z)))
    return distance.item() if np.ndim(distance) == 0 else distance


class ChartPoint:
    """
    Represents a point (or a batch of points) of ℋⁿ(1) in chart coordinates,
    together with the metric, its inverse and the Christoffel symbols there.
    """

    __slots__ = ("_y", "_sigma", "_sigma_inv", "_christoffel")

    def __init__(self, y: ArrayLike) -> None:
        """
        Initialize the chart point.

        :param y: The chart coordinates, the last axis has length n.
        :type y: np.ndarray
        """
        self._y = _as_points(y)
        self._sigma, self._sigma_inv = chart_metric(self._y)
        self._christoffel = christoffels(self._y)

    @property
    def y(self) -> np.ndarray:
        """
        The chart coordinates.
        """
        return self._y

    @property
    def n(self) -> int:
        """
        The dimension n.
        """
        return self._y.shape[-1]

    @property
    def sigma(self) -> np.ndarray:
        """
        The metric σ_ij.
        """
        return self._sigma

    @property
    def sigma_inv(self) -> np.ndarray:
        """
        The inverse metric σ^{ij}.
        """
        return self._sigma_inv

    @property
    def christoffel(self) -> np.ndarray:
        """
        The Christoffel symbols, indexed ``[..., k, i, j]``.
        """
        return self._christoffel

    @property
    def x(self) -> np.ndarray:
        """
        The point on the hyperboloid.
        """
        return embed(self._y)

    @property
    def radius(self) -> np.ndarray:
        """
        The geodesic distance to the pole.
        """
        return geodesic_radius(self._y)

    def __getitem__(self, index) -> "ChartPoint":
        return ChartPoint(self._y[index])

    def __len__(self) -> int:
        return 1 if self._y.ndim == 1 else self._y.shape[0]

    def __repr__(self) -> str:
        if self._y.ndim > 1:
            return f"ChartPoint(batch={self._y.shape[:-1]}, n={self.n})"
        return f"ChartPoint(y={np.array2string(self._y, precision=6)})"


def chart_point(y: ArrayLike) -> ChartPoint:
    return ChartPoint(y)


def covariant_hessian(partials1: ArrayLike, partials2: ArrayLike, point: ChartPoint) -> np.ndarray:
    """
    The covariant Hessian u_ij = ∂_i∂_j u - Γ^k_ij ∂_k u.

    :param partials1: The chart gradient ∂_k u.
    :type partials1: np.ndarray
    :param partials2: The chart Hessian ∂_i∂_j u, symmetric.
    :type partials2: np.ndarray
    :param point: Where the partials were taken.
    :type point: ChartPoint
    :return: The symmetric covariant Hessian.
    :rtype: np.ndarray
    """
    partials1 = np.asarray(partials1, dtype=float)
    partials2 = np.asarray(partials2, dtype=float)
    return partials2 - np.einsum("...kij,...k->...ij", point.christoffel, partials1)

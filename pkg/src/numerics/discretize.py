"""
Finite differences on a polar grid over the geodesic ball |y| <= R about the pole (n = 2).

Node 0 is the pole. Ring i (1 <= i <= N_rho) sits at ρ = iΔρ and carries N_theta
nodes at angles jΔθ; the outermost ring is the boundary.
"""

from typing import Optional, Union

import numpy as np

from ..errors import ConfigError, InvalidBoundaryDataError
from ..geometry.graphgeom import GraphPointState, ShapeData, shape_data
from ..geometry.hypgeom import ChartPoint, covariant_hessian
from ..problem.boundary import BoundaryData


class Grid:
    """
    Represents a polar grid in chart coordinates.
    """

    __slots__ = (
        "_radius",
        "_n_rho",
        "_n_theta",
        "_rho",
        "_angle",
        "_ring",
        "_slot",
        "_points",
    )

    def __init__(self, radius: float, n_rho: int, n_theta: int) -> None:
        """
        Initialize the grid.

        :param radius: The chart radius R, the geodesic radius is arcsinh(R).
        :type radius: float
        :param n_rho: The number of rings, at least 8.
        :type n_rho: int
        :param n_theta: The number of nodes per ring, even and at least 16.
        :type n_theta: int
        :raises ConfigError: If a parameter is out of range.
        """
        if not np.isfinite(radius) or radius <= 0:
            raise ConfigError(f"The chart radius must be positive, got {radius}")
        if int(n_rho) != n_rho or n_rho < 8:
            raise ConfigError(f"N_rho must be an integer >= 8, got {n_rho}")
        if int(n_theta) != n_theta or n_theta < 16 or n_theta % 2:
            raise ConfigError(f"N_theta must be an even integer >= 16, got {n_theta}")
        self._radius = float(radius)
        self._n_rho = int(n_rho)
        self._n_theta = int(n_theta)

        rings, slots = np.meshgrid(np.arange(1, self._n_rho + 1), np.arange(self._n_theta), indexing="ij")
        self._ring = np.concatenate([[0], rings.ravel()])
        self._slot = np.concatenate([[0], slots.ravel()])
        self._rho = self._ring * self.d_rho
        self._angle = self._slot * self.d_theta
        y = np.stack([self._rho * np.cos(self._angle), self._rho * np.sin(self._angle)], axis=-1)
        self._points = ChartPoint(y)

    @property
    def radius(self) -> float:
        return self._radius

    @property
    def n_rho(self) -> int:
        return self._n_rho

    @property
    def n_theta(self) -> int:
        return self._n_theta

    @property
    def shape(self) -> tuple[int, int]:
        return self._n_rho, self._n_theta

    @property
    def d_rho(self) -> float:
        return self._radius / self._n_rho

    @property
    def d_theta(self) -> float:
        return 2.0 * np.pi / self._n_theta

    @property
    def size(self) -> int:
        """
        The number of nodes, 1 + N_rho·N_theta.
        """
        return 1 + self._n_rho * self._n_theta

    @property
    def points(self) -> ChartPoint:
        """
        The chart points of all nodes, in flat index order.
        """
        return self._points

    @property
    def rho(self) -> np.ndarray:
        return self._rho

    @property
    def angle(self) -> np.ndarray:
        return self._angle

    @property
    def ring(self) -> np.ndarray:
        return self._ring

    @property
    def slot(self) -> np.ndarray:
        return self._slot

    @property
    def boundary(self) -> np.ndarray:
        """
        The flat indices of the outermost ring.
        """
        return np.flatnonzero(self._ring == self._n_rho)

    @property
    def interior(self) -> np.ndarray:
        """
        The flat indices of the pole and the inner rings.
        """
        return np.flatnonzero(self._ring < self._n_rho)

    @property
    def geodesic_radius(self) -> float:
        return float(np.arcsinh(self._radius))

    def index(self, ring: int, slot: int) -> int:
        """
        The flat index of node (ring, slot). Every slot of ring 0 maps to the pole.
        """
        if not 0 <= ring <= self._n_rho:
            raise IndexError(f"Ring {ring} is outside 0..{self._n_rho}")
        if ring == 0:
            return 0
        return 1 + (ring - 1) * self._n_theta + slot % self._n_theta

    def node(self, index: int) -> tuple[int, int]:
        """
        The (ring, slot) of a flat index.
        """
        if not 0 <= index < self.size:
            raise IndexError(f"Node {index} is outside 0..{self.size - 1}")
        return int(self._ring[index]), int(self._slot[index])

    def as_rings(self, values: np.ndarray) -> np.ndarray:
        """
        Nodal values as an array of shape (N_rho+1, N_theta), row 0 repeating the pole.
        """
        values = np.asarray(values)
        rings = values[1:].reshape(self._n_rho, self._n_theta, *values.shape[1:])
        pole = np.broadcast_to(values[0], (1, self._n_theta) + values.shape[1:])
        return np.concatenate([pole, rings], axis=0)

    def interpolate(self, values: np.ndarray, y: np.ndarray) -> np.ndarray:
        """
        Bilinear interpolation in (ρ, angle) of nodal values, exact at the nodes.
        """
        y = np.asarray(y, dtype=float)
        rings = self.as_rings(values)
        rho = np.sqrt(np.sum(y**2, axis=-1))
        angle = np.mod(np.arctan2(y[..., 1], y[..., 0]), 2.0 * np.pi)
        position = np.clip(rho / self.d_rho, 0.0, self._n_rho)
        i0 = np.minimum(np.floor(position).astype(int), self._n_rho - 1)
        wi = position - i0
        turn = angle / self.d_theta
        j0 = np.floor(turn).astype(int) % self._n_theta
        wj = turn - np.floor(turn)
        j1 = (j0 + 1) % self._n_theta
        lower = (1.0 - wj) * rings[i0, j0] + wj * rings[i0, j1]
        upper = (1.0 - wj) * rings[i0 + 1, j0] + wj * rings[i0 + 1, j1]
        return (1.0 - wi) * lower + wi * upper

    def __repr__(self) -> str:
        return f"Grid(R={self._radius}, N_rho={self._n_rho}, N_theta={self._n_theta})"


def build_grid(radius: float, n_rho: int, n_theta: int) -> Grid:
    return Grid(radius, n_rho, n_theta)


class NodalField:
    """
    Represents a function on the grid nodes as a constant offset plus a deviation.

    Stencils act on the deviation only, so a constant field differentiates to exact zeros.
    """

    __slots__ = ("_values", "_offset")

    def __init__(self, values: np.ndarray, offset: float = 0.0) -> None:
        """
        :param values: The deviation from ``offset`` at every node.
        :type values: np.ndarray
        :param offset: The constant offset.
        :type offset: float
        :raises ValueError: If an entry is not finite.
        """
        values = np.array(values, dtype=float)
        if values.ndim != 1 or not np.all(np.isfinite(values)) or not np.isfinite(offset):
            raise ValueError("A nodal field needs a finite one-dimensional array of values")
        self._values = values
        self._offset = float(offset)

    @classmethod
    def constant(cls, grid: Grid, c: float) -> "NodalField":
        return cls(np.zeros(grid.size), c)

    @classmethod
    def from_full(cls, grid: Grid, full: np.ndarray, offset: Optional[float] = None) -> "NodalField":
        full = np.asarray(full, dtype=float)
        if full.shape != (grid.size,):
            raise ValueError(f"Expected {grid.size} nodal values, got shape {full.shape}")
        offset = float(np.mean(full)) if offset is None else offset
        return cls(full - offset, offset)

    @property
    def values(self) -> np.ndarray:
        """
        The deviation from the offset.
        """
        return self._values

    @property
    def offset(self) -> float:
        return self._offset

    @property
    def full(self) -> np.ndarray:
        """
        The nodal values offset + deviation.
        """
        return self._offset + self._values

    def __len__(self) -> int:
        return self._values.size

    def copy(self) -> "NodalField":
        return NodalField(self._values, self._offset)

    def shifted(self, delta: np.ndarray, nodes: Optional[np.ndarray] = None) -> "NodalField":
        """
        A new field with ``delta`` added to the deviation (at ``nodes`` if given).
        """
        values = self._values.copy()
        if nodes is None:
            values += delta
        else:
            values[nodes] += delta
        return NodalField(values, self._offset)

    def __repr__(self) -> str:
        return f"NodalField(offset={self._offset}, size={self._values.size})"


def _one_sided(rings: np.ndarray, d_rho: float) -> tuple[np.ndarray, np.ndarray]:
    first = (3.0 * rings[-1] - 4.0 * rings[-2] + rings[-3]) / (2.0 * d_rho)
    second = (2.0 * rings[-1] - 5.0 * rings[-2] + 4.0 * rings[-3] - rings[-4]) / d_rho**2
    return first, second


def _angular(values: np.ndarray, d_theta: float) -> tuple[np.ndarray, np.ndarray]:
    forward = np.roll(values, -1, axis=-1)
    backward = np.roll(values, 1, axis=-1)
    first = (forward - backward) / (2.0 * np.sin(d_theta))
    second = (forward - 2.0 * values + backward) / (2.0 * (1.0 - np.cos(d_theta)))
    return first, second


def _pole_partials(center: float, ring1: np.ndarray, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    # Fourier coefficients of the first ring about the pole value
    h = grid.d_rho
    angle = grid.angle[1 : 1 + grid.n_theta]
    d = ring1 - center
    weight = 2.0 / grid.n_theta
    a1 = weight * np.dot(d, np.cos(angle))
    b1 = weight * np.dot(d, np.sin(angle))
    a2 = weight * np.dot(d, np.cos(2.0 * angle))
    b2 = weight * np.dot(d, np.sin(2.0 * angle))
    laplacian = 4.0 * np.mean(d) / h**2
    difference = 4.0 * a2 / h**2
    uxy = 2.0 * b2 / h**2
    grad = np.array([a1 / h, b1 / h])
    hess = np.array([[(laplacian + difference) / 2.0, uxy], [uxy, (laplacian - difference) / 2.0]])
    return grad, hess


def fd_partials(field: Union[NodalField, np.ndarray], grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """
    Chart partials of a nodal field at every node.

    Central differences in ρ (one-sided second order on the boundary ring) and
    in angle are mapped to Cartesian partials through the polar Jacobian. The
    pole uses the Fourier modes of the first ring.

    :param field: The field, or the raw nodal values.
    :type field: NodalField
    :param grid: The grid.
    :type grid: Grid
    :return: The gradient, shape (size, 2), and the Hessian, shape (size, 2, 2).
    :rtype: tuple[np.ndarray, np.ndarray]
    """
    values = field.values if isinstance(field, NodalField) else np.asarray(field, dtype=float)
    if values.shape != (grid.size,):
        raise ValueError(f"Expected {grid.size} nodal values, got shape {values.shape}")
    h = grid.d_rho
    rings = grid.as_rings(values)

    u_r = np.empty((grid.n_rho, grid.n_theta))
    u_rr = np.empty((grid.n_rho, grid.n_theta))
    u_r[:-1] = (rings[2:] - rings[:-2]) / (2.0 * h)
    u_rr[:-1] = (rings[2:] - 2.0 * rings[1:-1] + rings[:-2]) / h**2
    u_r[-1], u_rr[-1] = _one_sided(rings, h)
    u_t, u_tt = _angular(rings[1:], grid.d_theta)
    u_rt, _ = _angular(u_r, grid.d_theta)

    rho = grid.rho[1:].reshape(grid.shape)
    c = np.cos(grid.angle[1:]).reshape(grid.shape)
    s = np.sin(grid.angle[1:]).reshape(grid.shape)

    ux = c * u_r - s / rho * u_t
    uy = s * u_r + c / rho * u_t
    uxx = c**2 * u_rr - 2 * s * c / rho * u_rt + s**2 / rho**2 * u_tt + s**2 / rho * u_r + 2 * s * c / rho**2 * u_t
    uyy = s**2 * u_rr + 2 * s * c / rho * u_rt + c**2 / rho**2 * u_tt + c**2 / rho * u_r - 2 * s * c / rho**2 * u_t
    uxy = (
        s * c * u_rr
        + (c**2 - s**2) / rho * u_rt
        - s * c / rho**2 * u_tt
        - s * c / rho * u_r
        - (c**2 - s**2) / rho**2 * u_t
    )

    grad = np.empty((grid.size, 2))
    hess = np.empty((grid.size, 2, 2))
    grad[1:, 0] = ux.ravel()
    grad[1:, 1] = uy.ravel()
    hess[1:, 0, 0] = uxx.ravel()
    hess[1:, 1, 1] = uyy.ravel()
    hess[1:, 0, 1] = hess[1:, 1, 0] = uxy.ravel()
    grad[0], hess[0] = _pole_partials(values[0], rings[1], grid)
    return grad, hess


def boundary_values(phi: BoundaryData, grid: Grid) -> np.ndarray:
    """
    φ on the boundary ring.

    :raises InvalidBoundaryDataError: If φ is not strictly positive there, or
        |Dφ|_σ >= φ at some boundary node.
    """
    y = grid.points.y[grid.boundary]
    values = np.asarray(phi(y))
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        raise InvalidBoundaryDataError(f"Boundary data must be strictly positive, got min {np.min(values):.6g}")
    margin = np.asarray(phi.spacelike_margin(y))
    if np.any(margin <= 0):
        raise InvalidBoundaryDataError(f"Boundary data must be spacelike, got margin {np.min(margin):.6g}")
    return values


def apply_boundary(field: NodalField, phi: BoundaryData, grid: Grid) -> NodalField:
    """
    Overwrite the boundary ring with φ, leaving the interior untouched.

    :raises InvalidBoundaryDataError: If φ is not strictly positive or not spacelike on the boundary.
    """
    values = field.values.copy()
    values[grid.boundary] = boundary_values(phi, grid) - field.offset
    return NodalField(values, field.offset)


class GraphFields:
    """
    Represents the derived quantities of a nodal field at a set of nodes:
    u, the covariant Du and D²u, v, g, h, λ and ϑ.
    """

    __slots__ = ("nodes", "state", "shape")

    def __init__(self, nodes: np.ndarray, state: GraphPointState, shape: ShapeData) -> None:
        self.nodes = nodes
        self.state = state
        self.shape = shape

    @property
    def u(self) -> np.ndarray:
        return self.state.u

    @property
    def v(self) -> np.ndarray:
        return np.atleast_1d(self.shape.v)

    @property
    def lam(self) -> np.ndarray:
        return self.shape.lam.values

    @property
    def theta(self) -> np.ndarray:
        return np.atleast_1d(self.shape.theta)


def nodal_jet(
    field: NodalField, grid: Grid, nodes: Optional[np.ndarray] = None, partials: Optional[tuple] = None
) -> GraphPointState:
    """
    The covariant 2-jet of a nodal field at ``nodes`` (all nodes by default).
    """
    nodes = np.arange(grid.size) if nodes is None else np.asarray(nodes)
    grad, hess = partials if partials is not None else fd_partials(field, grid)
    point = grid.points[nodes]
    d2u = covariant_hessian(grad[nodes], hess[nodes], point)
    return GraphPointState(field.full[nodes], grad[nodes], d2u, point)


def graph_fields(field: NodalField, grid: Grid, nodes: Optional[np.ndarray] = None) -> GraphFields:
    """
    Run fd_partials, the covariant Hessian and the shape pipeline at ``nodes``.

    :raises NonSpacelikeError: If the graph is not spacelike at one of the nodes.
        The reported node indices refer to positions within ``nodes``.
    """
    nodes = np.arange(grid.size) if nodes is None else np.asarray(nodes)
    state = nodal_jet(field, grid, nodes)
    return GraphFields(nodes, state, shape_data(state))

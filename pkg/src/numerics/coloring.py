"""
Column coloring of the finite-difference Jacobian on a polar grid.

Residual rows at ring nodes depend on the 3×3 block of ring nodes around them
(and on the pole for the first ring). Two ring columns may be perturbed
together when no ring row sees both, i.e. unless their ring distance and
cyclic angular distance are both at most 2. The pole row and the pole column
are left out of the coloring and assembled separately.
"""

import numpy as np
from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from .discretize import Grid, fd_partials

_plans: LRUCache = LRUCache(maxsize=16)
_weights: LRUCache = LRUCache(maxsize=16)


class ColoringPlan:
    """
    Represents a coloring of the ring columns of the interior unknowns.

    The interior unknowns are the pole (flat index 0) and the rings 1..N_rho-1,
    whose flat indices coincide with the unknown indices.
    """

    __slots__ = ("n_rho", "n_theta", "colors", "rows", "cols")

    def __init__(
        self, n_rho: int, n_theta: int, colors: list[np.ndarray], rows: list[np.ndarray], cols: list[np.ndarray]
    ) -> None:
        self.n_rho = n_rho
        self.n_theta = n_theta
        self.colors = colors
        self.rows = rows
        self.cols = cols

    @property
    def n_colors(self) -> int:
        return len(self.colors)

    @property
    def unknowns(self) -> int:
        return 1 + (self.n_rho - 1) * self.n_theta

    @property
    def ring1(self) -> np.ndarray:
        """
        The flat indices of the first ring.
        """
        return np.arange(1, 1 + self.n_theta)

    def __repr__(self) -> str:
        return f"ColoringPlan(N_rho={self.n_rho}, N_theta={self.n_theta}, colors={self.n_colors})"


def _flat(i: int, j: int, n_theta: int) -> int:
    return 1 + (i - 1) * n_theta + j % n_theta


@cached(_plans)
def coloring_plan(n_rho: int, n_theta: int) -> ColoringPlan:
    """
    Greedy distance-2 coloring of the ring unknowns, in row-major order.

    :param n_rho: The number of rings of the grid.
    :type n_rho: int
    :param n_theta: The number of nodes per ring.
    :type n_theta: int
    :return: The colored column groups, and for each group the (row, column)
        pairs of the Jacobian entries it determines.
    :rtype: ColoringPlan
    """
    inner = n_rho - 1
    color = -np.ones((inner + 1, n_theta), dtype=int)  # row 0 unused
    for i in range(1, inner + 1):
        for j in range(n_theta):
            taken = set()
            for di in range(-2, 3):
                ii = i + di
                if not 1 <= ii <= inner:
                    continue
                for dj in range(-2, 3):
                    c = color[ii, (j + dj) % n_theta]
                    if c >= 0:
                        taken.add(c)
            c = 0
            while c in taken:
                c += 1
            color[i, j] = c

    n_colors = int(color[1:].max()) + 1
    colors = []
    rows = []
    cols = []
    for c in range(n_colors):
        members = np.argwhere(color == c)
        colors.append(np.array([_flat(i, j, n_theta) for i, j in members], dtype=int))
        pair_rows = []
        pair_cols = []
        for i, j in members:
            column = _flat(i, j, n_theta)
            for di in (-1, 0, 1):
                ii = i + di
                if not 1 <= ii <= inner:
                    continue
                for dj in (-1, 0, 1):
                    pair_rows.append(_flat(ii, j + dj, n_theta))
                    pair_cols.append(column)
        rows.append(np.array(pair_rows, dtype=int))
        cols.append(np.array(pair_cols, dtype=int))
    return ColoringPlan(n_rho, n_theta, colors, rows, cols)


class StencilWeights:
    """
    Represents the derivatives of the chart partials with respect to the unknowns.

    For every structurally nonzero Jacobian entry (row, col), ``grad[e]`` and
    ``hess[e]`` are ∂(Du, D²u)(row)/∂u(col). The difference stencils are linear,
    so the weights are exact.
    """

    __slots__ = ("rows", "cols", "grad", "hess")

    def __init__(self, rows: np.ndarray, cols: np.ndarray, grad: np.ndarray, hess: np.ndarray) -> None:
        self.rows = rows
        self.cols = cols
        self.grad = grad
        self.hess = hess

    def __len__(self) -> int:
        return self.rows.size


def _indicator_partials(grid: Grid, nodes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    values = np.zeros(grid.size)
    values[nodes] = 1.0
    return fd_partials(values, grid)


@cached(_weights, key=lambda grid: hashkey(grid.radius, grid.n_rho, grid.n_theta))
def stencil_weights(grid: Grid) -> StencilWeights:
    """
    Read the stencil weights off the colored column groups.

    A colored group is fed to :func:`fd_partials` as one indicator vector; its
    columns never share a ring row, so each ring row sees at most one of them.
    The pole column and the pole row are handled one column at a time.

    :param grid: The grid.
    :type grid: Grid
    :rtype: StencilWeights
    """
    plan = coloring_plan(grid.n_rho, grid.n_theta)
    rows = []
    cols = []
    grads = []
    hesses = []

    for group, pair_rows, pair_cols in zip(plan.colors, plan.rows, plan.cols):
        grad, hess = _indicator_partials(grid, group)
        rows.append(pair_rows)
        cols.append(pair_cols)
        grads.append(grad[pair_rows])
        hesses.append(hess[pair_rows])

    ring1 = plan.ring1
    affected = np.concatenate([[0], ring1])
    grad, hess = _indicator_partials(grid, np.array([0]))
    rows.append(affected)
    cols.append(np.zeros(affected.size, dtype=int))
    grads.append(grad[affected])
    hesses.append(hess[affected])

    for column in ring1:
        grad, hess = _indicator_partials(grid, np.array([column]))
        rows.append(np.array([0]))
        cols.append(np.array([column]))
        grads.append(grad[:1])
        hesses.append(hess[:1])

    return StencilWeights(np.concatenate(rows), np.concatenate(cols), np.concatenate(grads), np.concatenate(hesses))

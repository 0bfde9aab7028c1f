"""
Random inputs for the matrix inequality suites.
"""

import numpy as np


def random_nonnegative_matrices(rng: np.random.Generator, n: int, size: int) -> np.ndarray:
    """
    Symmetric non-negative matrices q = A Aᵀ with standard normal A.

    :return: An array of shape (size, n, n).
    :rtype: np.ndarray
    """
    a = rng.standard_normal((size, n, n))
    q = a @ np.swapaxes(a, -1, -2)
    return 0.5 * (q + np.swapaxes(q, -1, -2))


def random_gradient_pairs(
    rng: np.random.Generator, n: int, size: int, rho: float, p_range: tuple[float, float] = (0.5, 2.0)
) -> tuple[np.ndarray, np.ndarray]:
    """
    Pairs (p, Dp) with p uniform in ``p_range`` and |Dp|/p uniform in [0, rho].

    :return: ``p`` of shape (size,) and ``Dp`` of shape (size, n).
    :rtype: tuple[np.ndarray, np.ndarray]
    """
    p = rng.uniform(*p_range, size=size)
    direction = rng.standard_normal((size, n))
    direction /= np.linalg.norm(direction, axis=-1, keepdims=True)
    ratio = rng.uniform(0.0, rho, size=size)
    return p, direction * (ratio * p)[:, None]

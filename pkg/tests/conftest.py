import numpy as np
import pytest
from loguru import logger as loguru_logger

from src import BoundaryData, PsiFamily, PsiSpec, SolveConfig, build_grid


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def logger():
    # the global loguru logger with its default sink removed
    loguru_logger.remove()
    yield loguru_logger


@pytest.fixture
def small_grid():
    return build_grid(1.0, 8, 16)


@pytest.fixture
def umbilic_config():
    """φ ≡ 2, ψ ≡ 1/4 on the acceptance grid: u ≡ 2 is the exact solution."""
    grid = build_grid(1.0, 32, 64)
    return SolveConfig(grid, PsiSpec(PsiFamily.CONSTANT, h=0.25), BoundaryData.constant(2.0))

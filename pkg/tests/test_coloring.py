import numpy as np
import pytest

from src.numerics import build_grid, coloring_plan, fd_partials, stencil_weights


def _ring_slot(index, n_theta):
    return 1 + (index - 1) // n_theta, (index - 1) % n_theta


@pytest.mark.parametrize("n_rho, n_theta", [(8, 16), (16, 32), (9, 18)])
def test_colors_partition_the_ring_unknowns(n_rho, n_theta):
    plan = coloring_plan(n_rho, n_theta)
    columns = np.sort(np.concatenate(plan.colors))
    np.testing.assert_array_equal(columns, np.arange(1, plan.unknowns))
    assert plan.unknowns == build_grid(1.0, n_rho, n_theta).interior.size


@pytest.mark.parametrize("n_rho, n_theta", [(8, 16), (16, 32), (9, 18)])
def test_no_row_sees_two_columns_of_one_color(n_rho, n_theta):
    plan = coloring_plan(n_rho, n_theta)
    for group in plan.colors:
        positions = [_ring_slot(index, n_theta) for index in group]
        for a, (i, j) in enumerate(positions):
            for ii, jj in positions[a + 1 :]:
                cyclic = min(abs(j - jj), n_theta - abs(j - jj))
                assert abs(i - ii) > 2 or cyclic > 2


def test_entry_pairs_cover_the_stencil():
    plan = coloring_plan(8, 16)
    for group, rows, cols in zip(plan.colors, plan.rows, plan.cols):
        assert set(cols.tolist()) == set(group.tolist())
        assert rows.size == cols.size
        assert np.all((rows >= 1) & (rows < plan.unknowns))
    assert plan.n_colors <= 25
    np.testing.assert_array_equal(plan.ring1, np.arange(1, 17))


def test_plans_are_cached():
    assert coloring_plan(8, 16) is coloring_plan(8, 16)
    assert coloring_plan(8, 16) is not coloring_plan(8, 18)


@pytest.mark.parametrize("n_rho, n_theta", [(8, 16), (9, 18)])
def test_stencil_weights_reproduce_the_partials(n_rho, n_theta, rng):
    grid = build_grid(1.0, n_rho, n_theta)
    weights = stencil_weights(grid)
    values = np.zeros(grid.size)
    values[grid.interior] = rng.normal(size=grid.interior.size)
    grad, hess = fd_partials(values, grid)
    size = grid.interior.size
    assembled_grad = np.zeros((size, 2))
    assembled_hess = np.zeros((size, 2, 2))
    np.add.at(assembled_grad, weights.rows, weights.grad * values[weights.cols, None])
    np.add.at(assembled_hess, weights.rows, weights.hess * values[weights.cols, None, None])
    np.testing.assert_allclose(assembled_grad, grad[grid.interior], atol=1e-9)
    np.testing.assert_allclose(assembled_hess, hess[grid.interior], atol=1e-7)


def test_stencil_weights_have_no_duplicate_entries():
    grid = build_grid(1.0, 8, 16)
    weights = stencil_weights(grid)
    pairs = set(zip(weights.rows.tolist(), weights.cols.tolist()))
    assert len(pairs) == len(weights)
    assert stencil_weights(grid) is stencil_weights(build_grid(1.0, 8, 16))

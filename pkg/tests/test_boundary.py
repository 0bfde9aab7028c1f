import numpy as np
import pytest

from src.errors import DomainError
from src.problem import BoundaryData

Y = np.array([[0.0, 0.0], [1.0, 0.0], [0.3, -0.4]])


def test_constant_data():
    phi = BoundaryData.constant(2.0)
    assert phi.is_constant
    np.testing.assert_allclose(phi(Y), 2.0)
    assert BoundaryData(2.0, [0.0, 0.0, 0.0]).is_constant


def test_lorentz_affine_data():
    # ⟨(0, 0, -1), x⟩_L = x₃ = √(1+|y|²)
    phi = BoundaryData(2.0, [0.0, 0.0, -1.0])
    np.testing.assert_allclose(phi(Y), 2.0 + np.sqrt(1.0 + np.sum(Y**2, axis=-1)))
    tilted = BoundaryData(2.0, [0.05, 0.0, 0.0])
    np.testing.assert_allclose(tilted(Y), 2.0 + 0.05 * Y[:, 0])


def test_ambient_vector_length_is_checked():
    with pytest.raises(DomainError):
        BoundaryData(2.0, [1.0, 0.0])(Y)
    with pytest.raises(DomainError):
        BoundaryData(2.0, [[1.0, 0.0, 0.0]])


def test_blend_from_a_constant():
    phi = BoundaryData(3.0, [0.1, 0.0, 0.0])
    np.testing.assert_allclose(phi.blend(2.0, 0.0)(Y), 2.0)
    np.testing.assert_allclose(phi.blend(2.0, 1.0)(Y), phi(Y))
    np.testing.assert_allclose(phi.blend(2.0, 0.5)(Y), 0.5 * 2.0 + 0.5 * phi(Y))
    assert "constant" in repr(BoundaryData.constant(1.0))


def test_gradient_of_lorentz_affine_data():
    phi = BoundaryData(2.0, [0.3, -0.2, -0.5])
    step = 1e-6
    for y in Y:
        expected = [(phi(y + step * e) - phi(y - step * e)) / (2 * step) for e in np.eye(2)]
        np.testing.assert_allclose(phi.gradient(y), expected, atol=1e-8)
    np.testing.assert_allclose(BoundaryData.constant(2.0).gradient(Y), 0.0)


def test_spacelike_margin_of_boundary_data():
    np.testing.assert_allclose(BoundaryData.constant(2.0).spacelike_margin(Y), 1.0)
    # φ = 2 + 1.5y₁ at (-1, 0): φ = 0.5 and |Dφ|_σ = 1.5√2
    steep = BoundaryData(2.0, [1.5, 0.0, 0.0])
    assert steep.spacelike_margin(np.array([-1.0, 0.0])) == pytest.approx(1.0 - 1.5 * np.sqrt(2.0) / 0.5)
    assert steep.spacelike_margin(np.array([0.0, 0.0])) == pytest.approx(0.25)

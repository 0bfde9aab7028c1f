import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from src.geometry import (
    ChartPoint,
    chart_metric,
    christoffels,
    covariant_hessian,
    embed,
    geodesic_radius,
    lorentz_distance,
    lorentz_inner,
    tangent_frame,
)

chart_coordinates = arrays(np.float64, (2,), elements=st.floats(min_value=-3.0, max_value=3.0))


@settings(max_examples=50, deadline=None)
@given(chart_coordinates)
def test_embedding_lies_on_the_hyperboloid(y):
    x = embed(y)
    assert lorentz_inner(x, x) == pytest.approx(-1.0, abs=1e-12 * (1.0 + y @ y))
    assert x[-1] > 0


@settings(max_examples=50, deadline=None)
@given(chart_coordinates)
def test_chart_metric_is_the_pullback(y):
    frame = tangent_frame(y)
    sigma, sigma_inv = chart_metric(y)
    pulled = np.array([[lorentz_inner(frame[i], frame[j]) for j in range(2)] for i in range(2)])
    np.testing.assert_allclose(pulled, sigma, atol=1e-12)
    np.testing.assert_allclose(sigma @ sigma_inv, np.eye(2), atol=1e-10)


def test_tangent_vectors_are_orthogonal_to_the_position():
    y = np.array([0.4, -1.2])
    x = embed(y)
    for vector in tangent_frame(y):
        assert lorentz_inner(x, vector) == pytest.approx(0.0, abs=1e-14)


def test_christoffels_match_the_metric_derivatives():
    y = np.array([0.3, -0.7])
    step = 1e-6
    _, sigma_inv = chart_metric(y)
    d_sigma = np.empty((2, 2, 2))
    for l in range(2):
        e = np.zeros(2)
        e[l] = step
        d_sigma[l] = (chart_metric(y + e)[0] - chart_metric(y - e)[0]) / (2 * step)
    # Γ^k_ij = ½ σ^{km}(∂_iσ_jm + ∂_jσ_im - ∂_mσ_ij)
    first_kind = 0.5 * (
        np.einsum("ijm->ijm", d_sigma) + np.einsum("jim->ijm", d_sigma) - np.einsum("mij->ijm", d_sigma)
    )
    expected = np.einsum("km,ijm->kij", sigma_inv, first_kind)
    np.testing.assert_allclose(christoffels(y), expected, atol=1e-8)


def test_covariant_hessian_of_the_height_function():
    # s = √(1+|y|²) satisfies D²s = s σ
    y = np.array([[0.0, 0.0], [0.5, 0.25], [-1.0, 2.0]])
    s = np.sqrt(1.0 + np.sum(y**2, axis=-1))
    gradient = y / s[:, None]
    hessian = np.eye(2) / s[:, None, None] - y[:, :, None] * y[:, None, :] / s[:, None, None] ** 3
    point = ChartPoint(y)
    np.testing.assert_allclose(covariant_hessian(gradient, hessian, point), s[:, None, None] * point.sigma, atol=1e-12)


def test_geodesic_radius_matches_the_lorentz_distance():
    y = np.array([[0.0, 0.0], [1.0, 0.0], [0.3, -2.0]])
    pole = embed(np.zeros(2))
    np.testing.assert_allclose(geodesic_radius(y), lorentz_distance(pole, embed(y)), atol=1e-12)
    assert geodesic_radius([1.0, 0.0]) == pytest.approx(np.arcsinh(1.0))


def test_chart_point_batches():
    point = ChartPoint(np.zeros((4, 2)))
    assert len(point) == 4
    assert point.n == 2
    np.testing.assert_allclose(point[1].sigma, np.eye(2))
    assert "batch" in repr(point)


def _metric_coefficients(y):
    sigma, _ = chart_metric(y)
    return np.array([sigma[0, 0], sigma[0, 1], sigma[1, 1]])


@pytest.mark.parametrize("y", [[0.0, 0.0], [0.3, -0.4], [-1.1, 0.7]])
def test_brioschi_curvature_is_minus_one(y):
    y = np.asarray(y, dtype=float)
    h = 1e-3
    eu = np.array([h, 0.0])
    ev = np.array([0.0, h])
    E, F, G = _metric_coefficients(y)
    d_u = (_metric_coefficients(y + eu) - _metric_coefficients(y - eu)) / (2 * h)
    d_v = (_metric_coefficients(y + ev) - _metric_coefficients(y - ev)) / (2 * h)
    d_uu = (_metric_coefficients(y + eu) - 2 * _metric_coefficients(y) + _metric_coefficients(y - eu)) / h**2
    d_vv = (_metric_coefficients(y + ev) - 2 * _metric_coefficients(y) + _metric_coefficients(y - ev)) / h**2
    d_uv = (
        _metric_coefficients(y + eu + ev)
        - _metric_coefficients(y + eu - ev)
        - _metric_coefficients(y - eu + ev)
        + _metric_coefficients(y - eu - ev)
    ) / (4 * h**2)
    (E_u, F_u, G_u), (E_v, F_v, G_v) = d_u, d_v
    first = np.array(
        [
            [-0.5 * d_vv[0] + d_uv[1] - 0.5 * d_uu[2], 0.5 * E_u, F_u - 0.5 * E_v],
            [F_v - 0.5 * G_u, E, F],
            [0.5 * G_v, F, G],
        ]
    )
    second = np.array([[0.0, 0.5 * E_v, 0.5 * G_u], [0.5 * E_v, E, F], [0.5 * G_u, F, G]])
    curvature = (np.linalg.det(first) - np.linalg.det(second)) / (E * G - F**2) ** 2
    assert curvature == pytest.approx(-1.0, abs=1e-5)


def _embedded_christoffels(y, h=1e-4):
    # Γ^l_ij = σ^{lk}⟨∂_k X, ∂_i∂_j X⟩_L from differences of the embedding
    e = np.eye(2) * h
    first = np.array([(embed(y + e[k]) - embed(y - e[k])) / (2 * h) for k in range(2)])
    second = np.empty((2, 2, 3))
    for i in range(2):
        for j in range(2):
            if i == j:
                second[i, j] = (embed(y + e[i]) - 2 * embed(y) + embed(y - e[i])) / h**2
            else:
                second[i, j] = (
                    embed(y + e[i] + e[j]) - embed(y + e[i] - e[j]) - embed(y - e[i] + e[j]) + embed(y - e[i] - e[j])
                ) / (4 * h**2)
    metric = np.array([[lorentz_inner(first[a], first[b]) for b in range(2)] for a in range(2)])
    lowered = np.array([[[lorentz_inner(first[k], second[i, j]) for j in range(2)] for i in range(2)] for k in range(2)])
    return np.einsum("lk,kij->lij", np.linalg.inv(metric), lowered)


@pytest.mark.parametrize("y", [[0.2, 0.1], [-0.8, 0.5], [1.3, -1.6]])
def test_covariant_hessian_matches_the_embedding(y):
    y = np.asarray(y, dtype=float)
    # f = exp(0.3y₁)sin(y₂) + y₁y₂²
    a, b = y
    gradient = np.array([0.3 * np.exp(0.3 * a) * np.sin(b) + b**2, np.exp(0.3 * a) * np.cos(b) + 2 * a * b])
    hessian = np.array(
        [
            [0.09 * np.exp(0.3 * a) * np.sin(b), 0.3 * np.exp(0.3 * a) * np.cos(b) + 2 * b],
            [0.3 * np.exp(0.3 * a) * np.cos(b) + 2 * b, -np.exp(0.3 * a) * np.sin(b) + 2 * a],
        ]
    )
    expected = hessian - np.einsum("kij,k->ij", _embedded_christoffels(y), gradient)
    np.testing.assert_allclose(covariant_hessian(gradient, hessian, ChartPoint(y)), expected, atol=1e-6)

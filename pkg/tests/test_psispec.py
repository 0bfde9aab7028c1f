import math

import numpy as np
import pytest

from src.errors import DomainError, InvalidPsiError, UnsupportedDerivativeError
from src.geometry import ChartPoint
from src.numerics import build_grid
from src.problem import (
    PsiFamily,
    PsiSpec,
    TabulatedField,
    blend,
    check_structural_conditions,
    dpsi_dtheta_power,
    eval_psi,
)

POLE = np.zeros(2)


def test_constant_family_ignores_u_and_theta():
    spec = PsiSpec(PsiFamily.CONSTANT, h=0.25)
    assert eval_psi(spec, POLE, 2.0, -2.0) == pytest.approx(0.25)
    assert eval_psi(spec, POLE, 5.0, -9.0) == pytest.approx(0.25)
    assert dpsi_dtheta_power(spec, POLE, 2.0, -2.0) == 0.0


def test_radial_profile_is_a_polynomial_in_the_geodesic_radius():
    spec = PsiSpec("constant", h=[1.0, 2.0])
    y = np.array([1.0, 0.0])
    assert eval_psi(spec, y, 1.0, -1.0) == pytest.approx(1.0 + 2.0 * math.asinh(1.0))
    assert eval_psi(spec, ChartPoint(y), 1.0, -1.0) == pytest.approx(1.0 + 2.0 * math.asinh(1.0))


def test_power_theta_uses_the_absolute_support_quantity():
    spec = PsiSpec(PsiFamily.POWER_THETA, p=2.0, h=1.0)
    assert eval_psi(spec, POLE, 1.0, -3.0) == pytest.approx(9.0)
    # f = ψ^{1/2} = |ϑ|, so ∂f/∂ϑ = -1 on ϑ < 0
    assert dpsi_dtheta_power(spec, POLE, 1.0, -3.0) == pytest.approx(-1.0)


def test_exp_theta_family():
    spec = PsiSpec(PsiFamily.EXP_THETA, p=1.0, h=0.5)
    assert eval_psi(spec, POLE, 1.0, -2.0) == pytest.approx(0.5 * math.exp(2.0))


def test_analytic_derivative_matches_a_difference_quotient():
    spec = PsiSpec(PsiFamily.EXP_THETA, p=0.7, h=[0.3, 0.1])
    y = np.array([0.4, 0.2])
    theta, step = -2.5, 1e-6
    numeric = (eval_psi(spec, y, 2.0, theta + step) ** 0.5 - eval_psi(spec, y, 2.0, theta - step) ** 0.5) / (2 * step)
    assert dpsi_dtheta_power(spec, y, 2.0, theta) == pytest.approx(numeric, rel=1e-6)


def test_non_positive_psi_is_rejected():
    spec = PsiSpec(PsiFamily.CONSTANT, h=[-0.1])
    with pytest.raises(InvalidPsiError):
        eval_psi(spec, POLE, 1.0, -1.0)


def test_tabulated_family_has_no_theta_derivative():
    grid = build_grid(1.0, 8, 16)
    spec = PsiSpec(PsiFamily.TABULATED, table=TabulatedField(grid, np.full(grid.size, 0.3)))
    assert not spec.has_theta_derivative
    np.testing.assert_allclose(eval_psi(spec, grid.points.y, 1.0, -1.0), 0.3)
    with pytest.raises(UnsupportedDerivativeError):
        dpsi_dtheta_power(spec, POLE, 1.0, -1.0)


def test_spec_validation():
    with pytest.raises(DomainError):
        PsiSpec(PsiFamily.TABULATED)
    with pytest.raises(DomainError):
        PsiSpec(PsiFamily.CONSTANT, h=[])
    with pytest.raises(DomainError):
        PsiSpec(PsiFamily.CONSTANT, k=2, l=2)
    with pytest.raises(ValueError):
        PsiSpec("quadratic")
    with pytest.raises(DomainError):
        TabulatedField(build_grid(1.0, 8, 16), np.ones(3))


def test_blend_interpolates_from_the_constant():
    spec = PsiSpec(PsiFamily.POWER_THETA, p=2.0, h=1.0)
    assert eval_psi(blend(spec, 0.25, 0.0), POLE, 1.0, -3.0) == pytest.approx(0.25)
    assert eval_psi(blend(spec, 0.25, 0.5), POLE, 1.0, -3.0) == pytest.approx(0.5 * 0.25 + 0.5 * 9.0)
    assert eval_psi(blend(spec, 0.25, 1.0), POLE, 1.0, -3.0) == pytest.approx(9.0)
    with pytest.raises(DomainError):
        blend(spec, 0.25, 1.5)


def _samples():
    y = np.array([[0.0, 0.0], [0.5, 0.1], [-0.3, 0.8]])
    u = np.array([1.5, 2.0, 2.5])
    theta = np.array([-1.6, -2.4, -3.0])
    return y, u, theta


@pytest.mark.parametrize("p", [2.0, 2.5, 4.0])
def test_power_theta_satisfies_the_structural_conditions(p, logger):
    y, u, theta = _samples()
    report = check_structural_conditions(PsiSpec(PsiFamily.POWER_THETA, p=p, h=0.1), y, u, theta, logger=logger)
    assert report.holds
    assert report.samples == 3
    assert report.to_dict()["condition_holds"]


def test_weak_power_fails_the_structural_condition(logger):
    y, u, theta = _samples()
    messages = []
    logger.add(messages.append, level="WARNING")
    report = check_structural_conditions(PsiSpec(PsiFamily.POWER_THETA, p=1.0, h=0.1), y, u, theta, logger=logger)
    assert not report.condition_holds
    assert report.convexity_margin < 0
    assert any("structural conditions" in str(message) for message in messages)


def test_exp_theta_structural_conditions(logger):
    y, u, theta = _samples()
    # ∂f/∂ϑ·ϑ = (p|ϑ|/(k-l)u)·f >= f needs p|ϑ|/u >= 2
    report = check_structural_conditions(PsiSpec(PsiFamily.EXP_THETA, p=4.0, h=0.1), y, u, theta, logger=logger)
    assert report.holds

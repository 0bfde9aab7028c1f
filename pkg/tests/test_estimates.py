import json
import math

import numpy as np
import pytest

from src import Settings, dump_json
from src.numerics import barrier_pair, homotopy_solve
from src.verify import (
    BarrierGaps,
    GradientBound,
    convergence_order,
    curvature_ratio,
    ellipticity_min,
    estimate_report,
    first_holding,
    gradient_mp_check,
    gradient_mp_sweep,
    recheck,
)


@pytest.fixture
def umbilic_report(umbilic_config, logger):
    return homotopy_solve(umbilic_config, logger)


def test_convergence_order():
    assert convergence_order([4e-2, 1e-2, 2.5e-3]) == pytest.approx([2.0, 2.0])
    assert convergence_order([1e-2, 0.0]) == [math.inf]


def test_gradient_bound_flags():
    log2 = math.log(2.0)
    bound = GradientBound(1.0, log_interior_max=log2, log_boundary_max=log2, sup_w=1.0, log_boundary_bound=1.0)
    assert bound.attained_on_boundary and bound.bound_holds and bound.holds
    inside = GradientBound(1.0, log_interior_max=math.log(2.5), log_boundary_max=log2, sup_w=1.0, log_boundary_bound=1.0)
    loose = GradientBound(1.0, log_interior_max=log2, log_boundary_max=log2, sup_w=3.0, log_boundary_bound=1.0)
    assert loose.attained_on_boundary and not loose.bound_holds
    assert not inside.holds
    assert first_holding([inside, bound]) is bound
    assert first_holding([inside]) is None


def test_barrier_gaps_orientation():
    assert BarrierGaps(0.0, 0.1, 0.2, 0.1).holds
    assert not BarrierGaps(0.0, -1e-6, 0.2, 1e-6).holds
    assert BarrierGaps(0.0, -1e-9, 0.2, 1e-9).holds
    above_lower = BarrierGaps(0.0, 0.1, -1e-3, 0.1)
    assert above_lower.u_below_s_plus and not above_lower.u_below_s_minus
    assert not above_lower.holds
    data = above_lower.to_dict()
    assert (data["u_below_s_plus"], data["u_below_s_minus"], data["holds"]) == (True, False, False)


def test_umbilic_gradient_maximum_principle(umbilic_report):
    check = gradient_mp_check(umbilic_report, 1.0)
    assert check.holds
    assert check.sup_w == pytest.approx(1.0)
    assert check.log_interior_max == pytest.approx(math.log(2.0))


def test_full_default_sweep_stays_finite(umbilic_report):
    results = gradient_mp_sweep(umbilic_report, Settings.get("estimates")["s-sweep"])
    assert [result.S_used for result in results][-1] == 128.0
    for result in results:
        assert all(math.isfinite(value) for value in (result.log_interior_max, result.log_boundary_bound))
        assert result.holds
    # 128·(2·2 + 2·arcsinh 1) is past the largest finite exponent of a float
    assert results[-1].log_boundary_bound > 709.0
    data = estimate_report(umbilic_report).to_dict()
    assert data["gradient_mp"]["holds"]
    assert recheck(json.loads(dump_json(data)))


def test_umbilic_curvature_ratio_and_ellipticity(umbilic_report):
    ratio = curvature_ratio(umbilic_report)
    assert ratio.sup_interior_A == pytest.approx(math.sqrt(0.5))
    assert ratio.ratio == pytest.approx(math.sqrt(0.5) / (1.0 + math.sqrt(0.5)))
    # ∂σ₂/∂λ_i = σ₁(λ|i) = 1/2
    assert ellipticity_min(umbilic_report) == pytest.approx(0.5)


def test_umbilic_estimate_report(umbilic_config, umbilic_report, logger):
    barriers = barrier_pair(umbilic_config, logger)
    report = estimate_report(umbilic_report, barriers)
    assert report.holds
    assert report.barrier_gaps.max_abs_s_plus_minus_u <= 1e-10
    data = report.to_dict()
    assert data["gradient_mp"]["S_used"] == 1.0
    assert recheck(data)


def test_recheck_detects_tampering(umbilic_report):
    data = json.loads(json.dumps(estimate_report(umbilic_report).to_dict()))
    assert data["barrier_gaps"] is None
    assert recheck(data)
    data["curvature_ratio"]["ratio"] *= 1.5
    assert not recheck(data)


def test_recheck_uses_the_recorded_tolerance(umbilic_config, umbilic_report, logger):
    barriers = barrier_pair(umbilic_config, logger)
    data = estimate_report(umbilic_report, barriers, barrier_tolerance=1e-3).to_dict()
    data["barrier_gaps"]["min_s_plus_minus_u"] = -1e-4
    assert recheck(data)
    data["barrier_gaps"]["tolerance"] = 1e-8
    assert not recheck(data)


def test_shifted_barrier_breaks_the_sandwich(umbilic_config, umbilic_report, logger):
    barriers = barrier_pair(umbilic_config, logger)
    barriers.upper.u = barriers.upper.u.shifted(np.full(umbilic_config.grid.size, -1e-3))
    report = estimate_report(umbilic_report, barriers)
    assert not report.barrier_gaps.holds
    assert not report.holds

"""
Post-solve checks of the a priori estimates: the gradient maximum principle,
the curvature ratio, the barrier sandwich and the ellipticity of the solution.

The checks read solve reports by attribute only (``u``, ``grid``, ``fields``).
"""

import math
from typing import Iterable, Optional, Sequence

import numpy as np

from ..algebra.symfun import quotient_gradient

BARRIER_TOLERANCE = 1e-8
DEFAULT_SWEEP = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0)


def convergence_order(errors: Sequence[float], ratio: float = 2.0) -> list[float]:
    """
    Observed orders log(e_i/e_{i+1})/log(ratio) between consecutive refinements.
    """
    orders = []
    for coarse, fine in zip(errors, errors[1:]):
        if coarse > 0 and fine > 0:
            orders.append(math.log(coarse / fine) / math.log(ratio))
        else:
            orders.append(math.inf)
    return orders


class GradientBound:
    """
    Represents the gradient maximum principle check for one S: the maximum of
    𝒲e^{Sπ} with 𝒲 = 1/v and π = ln u, and the bound
    sup 𝒲 <= sup_∂𝒲·e^{S(2 sup_∂|φ| + diam)}.

    Maxima and the bound are kept as natural logarithms: e^{S(2 sup_∂|φ| + diam)}
    leaves the float range inside the default sweep.
    """

    __slots__ = ("S_used", "log_interior_max", "log_boundary_max", "sup_w", "log_boundary_bound", "tolerance")

    def __init__(
        self,
        S_used: float,
        log_interior_max: float,
        log_boundary_max: float,
        sup_w: float,
        log_boundary_bound: float,
        tolerance: float = 1e-12,
    ) -> None:
        self.S_used = S_used
        self.log_interior_max = log_interior_max
        self.log_boundary_max = log_boundary_max
        self.sup_w = sup_w
        self.log_boundary_bound = log_boundary_bound
        self.tolerance = tolerance

    @property
    def attained_on_boundary(self) -> bool:
        return self.log_boundary_max >= self.log_interior_max + math.log1p(-self.tolerance)

    @property
    def bound_holds(self) -> bool:
        return math.log(self.sup_w) <= self.log_boundary_bound

    @property
    def holds(self) -> bool:
        return self.attained_on_boundary and self.bound_holds

    def to_dict(self) -> dict:
        return {
            "S_used": self.S_used,
            "log_interior_max": self.log_interior_max,
            "log_boundary_max": self.log_boundary_max,
            "sup_w": self.sup_w,
            "log_boundary_bound": self.log_boundary_bound,
            "attained_on_boundary": self.attained_on_boundary,
            "bound_holds": self.bound_holds,
            "holds": self.holds,
        }


class CurvatureRatio:
    """
    Represents sup_int‖A‖, sup_∂‖A‖ and the ratio sup_int‖A‖/(1 + sup_∂‖A‖).
    """

    __slots__ = ("sup_interior_A", "sup_boundary_A")

    def __init__(self, sup_interior_A: float, sup_boundary_A: float) -> None:
        self.sup_interior_A = sup_interior_A
        self.sup_boundary_A = sup_boundary_A

    @property
    def ratio(self) -> float:
        return self.sup_interior_A / (1.0 + self.sup_boundary_A)

    def to_dict(self) -> dict:
        return {"sup_interior_A": self.sup_interior_A, "sup_boundary_A": self.sup_boundary_A, "ratio": self.ratio}


class BarrierGaps:
    """
    Represents the node-wise gaps between the solution and the two barriers.

    Both barriers lie above the solution: the check requires u <= s⁺ and
    u <= s⁻ up to the tolerance. The gap min(u - s⁻) is kept for reference.
    """

    __slots__ = ("min_u_minus_s_minus", "min_s_plus_minus_u", "min_s_minus_minus_u", "max_abs_s_plus_minus_u", "tolerance")

    def __init__(
        self,
        min_u_minus_s_minus: float,
        min_s_plus_minus_u: float,
        min_s_minus_minus_u: float,
        max_abs_s_plus_minus_u: float,
        tolerance: float = BARRIER_TOLERANCE,
    ) -> None:
        self.min_u_minus_s_minus = min_u_minus_s_minus
        self.min_s_plus_minus_u = min_s_plus_minus_u
        self.min_s_minus_minus_u = min_s_minus_minus_u
        self.max_abs_s_plus_minus_u = max_abs_s_plus_minus_u
        self.tolerance = tolerance

    @property
    def u_below_s_plus(self) -> bool:
        return self.min_s_plus_minus_u >= -self.tolerance

    @property
    def u_below_s_minus(self) -> bool:
        return self.min_s_minus_minus_u >= -self.tolerance

    @property
    def holds(self) -> bool:
        return self.u_below_s_plus and self.u_below_s_minus

    def to_dict(self) -> dict:
        return {
            "min_u_minus_s_minus": self.min_u_minus_s_minus,
            "min_s_plus_minus_u": self.min_s_plus_minus_u,
            "min_s_minus_minus_u": self.min_s_minus_minus_u,
            "max_abs_s_plus_minus_u": self.max_abs_s_plus_minus_u,
            "u_below_s_plus": self.u_below_s_plus,
            "u_below_s_minus": self.u_below_s_minus,
            "tolerance": self.tolerance,
            "holds": self.holds,
        }


def _weights(report) -> tuple[np.ndarray, np.ndarray]:
    fields = report.fields
    return 1.0 / fields.v, np.log(fields.u)


def gradient_mp_check(report, S: float) -> GradientBound:
    """
    Evaluate ln(𝒲e^{Sπ}) = ln 𝒲 + S·π at every node and compare the interior and boundary maxima.

    :param report: A converged solve report.
    :type report: src.numerics.solver.SolveReport
    :param S: The exponent.
    :type S: float
    :rtype: GradientBound
    """
    grid = report.grid
    w, pi = _weights(report)
    log_quantity = np.log(w) + S * pi
    boundary = grid.boundary
    interior = grid.interior
    phi_sup = float(np.max(np.abs(report.u.full[boundary])))
    diameter = 2.0 * grid.geodesic_radius
    sup_boundary_w = float(np.max(w[boundary]))
    return GradientBound(
        float(S),
        float(np.max(log_quantity[interior])),
        float(np.max(log_quantity[boundary])),
        float(np.max(w)),
        math.log(sup_boundary_w) + S * (2.0 * phi_sup + diameter),
    )


def gradient_mp_sweep(report, values: Iterable[float] = DEFAULT_SWEEP) -> list[GradientBound]:
    return [gradient_mp_check(report, S) for S in values]


def first_holding(results: Sequence[GradientBound]) -> Optional[GradientBound]:
    """
    The first swept S whose maximum is attained on the boundary with the bound holding.
    """
    return next((result for result in results if result.holds), None)


def curvature_ratio(report) -> CurvatureRatio:
    """
    ‖A‖ = |λ| at every node, its suprema over the interior and the boundary ring.
    """
    grid = report.grid
    norm = np.linalg.norm(report.fields.lam, axis=-1)
    return CurvatureRatio(float(np.max(norm[grid.interior])), float(np.max(norm[grid.boundary])))


def barrier_check(report, barriers, tolerance: float = BARRIER_TOLERANCE) -> BarrierGaps:
    """
    Node-wise comparison of the solution with the barriers.

    :param report: The main solve report.
    :param barriers: The barrier pair, iterating as (s⁺, s⁻).
    :rtype: BarrierGaps
    """
    s_plus, s_minus = barriers
    u = report.u.full
    upper = s_plus.full
    lower = s_minus.full
    return BarrierGaps(
        float(np.min(u - lower)),
        float(np.min(upper - u)),
        float(np.min(lower - u)),
        float(np.max(np.abs(upper - u))),
        tolerance,
    )


def ellipticity_min(report, k: Optional[int] = None, l: Optional[int] = None) -> float:
    """
    The smallest component of ∂(σ_k/σ_l)/∂λ_i over the interior nodes.
    """
    k = report.config.k if k is None else k
    l = report.config.l if l is None else l
    lam = report.fields.lam[report.grid.interior]
    return float(np.min(quotient_gradient(lam, k, l)))


class EstimateReport:
    """
    Represents every post-solve estimate of a run.
    """

    __slots__ = ("gradient_mp", "curvature_ratio", "barrier_gaps", "structural_margins", "ellipticity_min")

    def __init__(
        self,
        gradient_mp: list[GradientBound],
        curvature_ratio: CurvatureRatio,
        barrier_gaps: Optional[BarrierGaps],
        structural_margins: Optional[dict],
        ellipticity_min: float,
    ) -> None:
        self.gradient_mp = gradient_mp
        self.curvature_ratio = curvature_ratio
        self.barrier_gaps = barrier_gaps
        self.structural_margins = structural_margins
        self.ellipticity_min = ellipticity_min

    @property
    def gradient_mp_holds(self) -> bool:
        return first_holding(self.gradient_mp) is not None

    @property
    def holds(self) -> bool:
        barrier = self.barrier_gaps is None or self.barrier_gaps.holds
        finite = math.isfinite(self.curvature_ratio.ratio)
        return self.gradient_mp_holds and barrier and finite and self.ellipticity_min > 0

    def to_dict(self) -> dict:
        chosen = first_holding(self.gradient_mp)
        return {
            "gradient_mp": {
                "sweep": [result.to_dict() for result in self.gradient_mp],
                "S_used": chosen.S_used if chosen is not None else None,
                "holds": self.gradient_mp_holds,
            },
            "curvature_ratio": self.curvature_ratio.to_dict(),
            "barrier_gaps": self.barrier_gaps.to_dict() if self.barrier_gaps is not None else None,
            "structural_margins": self.structural_margins,
            "ellipticity_min": self.ellipticity_min,
            "holds": self.holds,
        }


def estimate_report(
    report,
    barriers=None,
    structural: Optional[dict] = None,
    sweep: Iterable[float] = DEFAULT_SWEEP,
    barrier_tolerance: float = BARRIER_TOLERANCE,
) -> EstimateReport:
    """
    Run every post-solve check on a converged report.
    """
    return EstimateReport(
        gradient_mp_sweep(report, sweep),
        curvature_ratio(report),
        barrier_check(report, barriers, barrier_tolerance) if barriers is not None else None,
        structural,
        ellipticity_min(report),
    )


def recheck(data: dict) -> bool:
    """
    Recompute every ``holds`` flag of a serialized :class:`EstimateReport` from its raw numbers.

    :return: Whether all recorded flags agree with the recomputed ones.
    :rtype: bool
    """
    consistent = True
    any_holds = False
    for entry in data["gradient_mp"]["sweep"]:
        attained = entry["log_boundary_max"] >= entry["log_interior_max"] + math.log1p(-1e-12)
        bound = math.log(entry["sup_w"]) <= entry["log_boundary_bound"]
        consistent &= entry["attained_on_boundary"] == attained
        consistent &= entry["bound_holds"] == bound
        consistent &= entry["holds"] == (attained and bound)
        any_holds |= attained and bound
    consistent &= data["gradient_mp"]["holds"] == any_holds

    ratio = data["curvature_ratio"]
    expected = ratio["sup_interior_A"] / (1.0 + ratio["sup_boundary_A"])
    consistent &= math.isclose(ratio["ratio"], expected, rel_tol=1e-12, abs_tol=0.0)

    gaps = data["barrier_gaps"]
    barrier = True
    if gaps is not None:
        tolerance = gaps.get("tolerance", BARRIER_TOLERANCE)
        below_upper = gaps["min_s_plus_minus_u"] >= -tolerance
        below_lower = gaps["min_s_minus_minus_u"] >= -tolerance
        barrier = below_upper and below_lower
        consistent &= gaps["u_below_s_plus"] == below_upper
        consistent &= gaps["u_below_s_minus"] == below_lower
        consistent &= gaps["holds"] == barrier

    overall = any_holds and barrier and math.isfinite(ratio["ratio"]) and data["ellipticity_min"] > 0
    consistent &= data["holds"] == overall
    return bool(consistent)

from .estimates import (
    BarrierGaps,
    CurvatureRatio,
    EstimateReport,
    GradientBound,
    barrier_check,
    convergence_order,
    curvature_ratio,
    ellipticity_min,
    estimate_report,
    first_holding,
    gradient_mp_check,
    gradient_mp_sweep,
    recheck,
)
from .suites import SuiteReport, SuiteResult, algebraic_suites

"""
Hessian Quotient Graphs
~~~~~~~~~~~~~~~~~~~~~~~

Spacelike graphs over the hyperbolic plane with prescribed Hessian quotient
curvature: a Dirichlet solver, its barriers and the numerical checks of the
a priori estimates.
"""

from .algebra import (
    EigenTuple,
    elementary_symmetric,
    estimate_B0,
    hessian_quotient,
    in_gamma_cone,
    quotient_gradient,
)
from .config import Config
from .errors import (
    AdmissibilityError,
    ConfigError,
    DomainError,
    GeometryError,
    HessianQuotientError,
    InvalidBoundaryDataError,
    InvalidPsiError,
    NonSpacelikeError,
    SingularQuotientError,
    UnsupportedDerivativeError,
    WriterError,
)
from .logging import InterceptHandler, Logger, Logging, intercept_standard_logging
from .numerics import (
    BarrierPair,
    Grid,
    NodalField,
    RefinementStudy,
    SolveConfig,
    SolveReport,
    barrier_pair,
    build_grid,
    homotopy_solve,
    newton_solve,
    refinement_study,
)
from .output import BaseWriter, RunResult, load_writers
from .problem import BoundaryData, ManufacturedSolution, PsiFamily, PsiSpec
from .settings import Settings
from .utils import MISSING, dump_json, resolve_threads
from .verify import EstimateReport, SuiteReport, algebraic_suites, estimate_report

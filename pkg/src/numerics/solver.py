"""
Residual, Jacobian, damped Newton and the continuation driver for

    F(λ[u]) = f(X, ϑ),   F = (σ_k/σ_l)^{1/(k-l)},   u = φ on the boundary,

on a polar grid over a geodesic ball of ℋ²(1).
"""

import math
from typing import Optional, Sequence

import numpy as np
from loguru import logger as _default_logger
from scipy import sparse
from scipy.sparse.linalg import norm as sparse_norm
from scipy.sparse.linalg import spsolve

from ..algebra.symfun import cone_margin, elementary_symmetric, quotient_power
from ..errors import AdmissibilityError, ConfigError, InvalidPsiError, NonSpacelikeError
from ..geometry.graphgeom import GraphPointState, shape_data, spacelike_margin
from ..geometry.hypgeom import covariant_hessian
from ..logging import Logger
from ..problem.boundary import BoundaryData
from ..problem.manufactured import ManufacturedSolution
from ..problem.psispec import PsiSpec, blend, eval_psi
from ..verify.estimates import convergence_order
from .coloring import stencil_weights
from .discretize import (
    GraphFields,
    Grid,
    NodalField,
    apply_boundary,
    boundary_values,
    build_grid,
    fd_partials,
    graph_fields,
)

DIMENSION = 2
SUPPORTED_PAIRS = ((2, 0), (1, 0))
_REJECTED = (NonSpacelikeError, AdmissibilityError, InvalidPsiError)


def umbilic_psi(n: int, k: int, l: int, c: float) -> float:
    """
    ψ₀ = C(n,k)/C(n,l)·c^{-(k-l)}, the right-hand side solved by u ≡ c.
    """
    return math.comb(n, k) / math.comb(n, l) * c ** (-(k - l))


def upper_barrier_scale(n: int, k: int, l: int) -> float:
    """
    The factor turning ψ^{1/(k-l)} into σ₂^{1/2} for the upper barrier,
    σ₂[s⁺] = C(n,2)·(C(n,l)/C(n,k)·ψ)^{2/(k-l)}.
    """
    return math.sqrt(math.comb(n, 2)) * (math.comb(n, l) / math.comb(n, k)) ** (1.0 / (k - l))


def lower_barrier_constant(n: int, k: int, l: int) -> float:
    """
    C(n,k,l) = C(n,l)^{1/(k-l)-1}·C(n,k)^{1-1/(k-l)}·C(n,k-1)^{l/(k-1)-1}.
    """
    m = k - l
    return (
        math.comb(n, l) ** (1.0 / m - 1.0)
        * math.comb(n, k) ** (1.0 - 1.0 / m)
        * math.comb(n, k - 1) ** (l / (k - 1) - 1.0)
    )


def lower_barrier_scale(n: int, k: int, l: int) -> float:
    """
    The factor turning ψ^{1/(k-l)} into σ_{k-1}^{1/(k-1)} for the σ_{k-1} barrier,
    σ_{k-1}[s⁻] = ψ^{(k-1)/(k-l)}·C(n,k,l)^{(k-1)/(l-k+1)}.
    """
    return lower_barrier_constant(n, k, l) ** (1.0 / (l - k + 1))


class SolveConfig:
    """
    Represents one Dirichlet problem together with the solver tolerances.

    The operator is (σ_k/σ_l)^{1/(k-l)}; its right-hand side is
    ``rhs_scale``·ψ^{1/(ψ.k-ψ.l)}, which is ψ^{1/(k-l)} for the main problem.
    """

    __slots__ = (
        "grid",
        "k",
        "l",
        "psi",
        "phi",
        "newton_tol",
        "max_newton",
        "homotopy_steps",
        "damping",
        "min_step",
        "min_t_step",
        "fd_jacobian_eps",
        "rhs_scale",
    )

    def __init__(
        self,
        grid: Grid,
        psi: PsiSpec,
        phi: BoundaryData,
        k: int = 2,
        l: int = 0,
        newton_tol: float = 1e-10,
        max_newton: int = 50,
        homotopy_steps: int = 10,
        damping: float = 0.5,
        min_step: float = 2.0**-20,
        min_t_step: float = 2.0**-10,
        fd_jacobian_eps: float = 1e-6,
        rhs_scale: float = 1.0,
    ) -> None:
        """
        Initialize the solve configuration.

        :raises ConfigError: If (k, l) is not supported or a tolerance is not positive.
        """
        if (k, l) not in SUPPORTED_PAIRS:
            raise ConfigError(f"Unsupported quotient (k, l) = ({k}, {l}), expected one of {SUPPORTED_PAIRS}")
        for name, value in (
            ("newton_tol", newton_tol),
            ("min_step", min_step),
            ("min_t_step", min_t_step),
            ("fd_jacobian_eps", fd_jacobian_eps),
            ("rhs_scale", rhs_scale),
        ):
            if not value > 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if not 0 < damping < 1:
            raise ConfigError(f"damping must lie in (0, 1), got {damping}")
        if max_newton < 1 or homotopy_steps < 1:
            raise ConfigError("max_newton and homotopy_steps must be at least 1")
        self.grid = grid
        self.psi = psi
        self.phi = phi
        self.k = k
        self.l = l
        self.newton_tol = newton_tol
        self.max_newton = max_newton
        self.homotopy_steps = homotopy_steps
        self.damping = damping
        self.min_step = min_step
        self.min_t_step = min_t_step
        self.fd_jacobian_eps = fd_jacobian_eps
        self.rhs_scale = rhs_scale

    @property
    def rhs_exponent(self) -> float:
        return 1.0 / (self.psi.k - self.psi.l)

    def replace(self, **changes) -> "SolveConfig":
        """
        A copy with some fields replaced.
        """
        values = {name: getattr(self, name) for name in self.__slots__}
        values.update(changes)
        return SolveConfig(**values)

    def umbilic_start(self, c0: float) -> float:
        """
        The constant ψ₀ for which u ≡ c₀ solves the main problem.
        """
        return umbilic_psi(DIMENSION, self.psi.k, self.psi.l, c0)

    def at(self, t: float, c0: float) -> "SolveConfig":
        """
        The problem at homotopy parameter t: ψ_t = (1-t)ψ₀ + tψ, φ_t = (1-t)c₀ + tφ.
        """
        return self.replace(psi=blend(self.psi, self.umbilic_start(c0), t), phi=self.phi.blend(c0, t))

    def __repr__(self) -> str:
        return f"SolveConfig(k={self.k}, l={self.l}, grid={self.grid!r}, psi={self.psi!r}, phi={self.phi!r})"


class Evaluation:
    """
    Represents the residual at a set of rows together with the node margins.
    """

    __slots__ = ("rows", "residual", "fields", "spacelike", "sigma1", "sigma2", "admissible")

    def __init__(self, rows, residual, fields, spacelike, sigma1, sigma2, admissible) -> None:
        self.rows = rows
        self.residual = residual
        self.fields = fields
        self.spacelike = spacelike
        self.sigma1 = sigma1
        self.sigma2 = sigma2
        self.admissible = admissible

    @property
    def norm(self) -> float:
        return float(np.max(np.abs(self.residual)))

    def margins(self) -> dict:
        return {
            "spacelike": float(np.min(self.spacelike)),
            "sigma1": float(np.min(self.sigma1)),
            "sigma2": float(np.min(self.sigma2)),
            "admissible": float(np.min(self.admissible)),
        }


def _evaluate_jet(
    cfg: SolveConfig, rows: np.ndarray, values: np.ndarray, grad: np.ndarray, hess: np.ndarray
) -> Evaluation:
    point = cfg.grid.points[rows]
    state = GraphPointState(values, grad, covariant_hessian(grad, hess, point), point)
    fields = GraphFields(rows, state, shape_data(state))

    lam = fields.shape.lam
    admissible = np.atleast_1d(cone_margin(lam, cfg.k))
    if np.any(admissible <= 0):
        bad = admissible <= 0
        raise AdmissibilityError(
            f"Principal curvatures left Γ_{cfg.k}", nodes=rows[bad], margin=float(np.min(admissible))
        )
    operator = np.atleast_1d(quotient_power(lam, cfg.k, cfg.l))
    psi = np.atleast_1d(eval_psi(cfg.psi, fields.state.point, fields.u, fields.theta))
    target = cfg.rhs_scale * psi**cfg.rhs_exponent
    return Evaluation(
        rows,
        operator - target,
        fields,
        np.atleast_1d(spacelike_margin(fields.state)),
        np.atleast_1d(elementary_symmetric(lam, 1)),
        np.atleast_1d(elementary_symmetric(lam, 2)),
        admissible,
    )


def evaluate(u: NodalField, cfg: SolveConfig, rows: Optional[np.ndarray] = None) -> Evaluation:
    """
    Evaluate the residual F(λ) - f at ``rows`` (the interior nodes by default).

    :raises NonSpacelikeError: If u is not positive or not spacelike at some row.
    :raises AdmissibilityError: If λ leaves Γ_k at some row.
    :raises InvalidPsiError: If ψ is not positive at some row.
    """
    grid = cfg.grid
    rows = grid.interior if rows is None else np.asarray(rows)
    full = u.full
    if np.any(full <= 0):
        bad = np.flatnonzero(full <= 0)
        raise NonSpacelikeError("u must be strictly positive", nodes=bad, margin=float(np.min(full)))
    grad, hess = fd_partials(u, grid)
    try:
        return _evaluate_jet(cfg, rows, full[rows], grad[rows], hess[rows])
    except NonSpacelikeError as e:
        raise NonSpacelikeError(e.args[0], nodes=rows[e.nodes], margin=e.margin) from e


def residual(u: NodalField, cfg: SolveConfig, rows: Optional[np.ndarray] = None) -> np.ndarray:
    """
    The residual F(λ[u]) - f(X, ϑ) at the interior nodes (or at ``rows``).

    :raises NonSpacelikeError: If some node is not spacelike; the offending nodes are attached.
    :raises AdmissibilityError: If λ ∉ Γ_k at some node; the offending nodes are attached.
    """
    return evaluate(u, cfg, rows).residual


# jet components: u, u_x, u_y, u_xx, u_xy (both entries), u_yy
_JET_COMPONENTS = 6


def _perturbed_jet(values, grad, hess, component: int, step: np.ndarray) -> tuple:
    values = values.copy()
    grad = grad.copy()
    hess = hess.copy()
    if component == 0:
        values += step
    elif component < 3:
        grad[:, component - 1] += step
    elif component == 3:
        hess[:, 0, 0] += step
    elif component == 4:
        hess[:, 0, 1] += step
        hess[:, 1, 0] += step
    else:
        hess[:, 1, 1] += step
    return values, grad, hess


def _jet_component(values, grad, hess, component: int) -> np.ndarray:
    if component == 0:
        return values
    if component < 3:
        return grad[:, component - 1]
    return hess[:, (0, 0, 1)[component - 3], (0, 1, 1)[component - 3]]


def _jet_sensitivities(u: NodalField, cfg: SolveConfig, logger: Logger) -> np.ndarray:
    """
    Central differences of the pointwise residual in each jet component, shape (rows, 6).

    The step is fd_jacobian_eps·max(1, |component|) at every row, halved up to
    four times while a perturbed jet is rejected.
    """
    grid = cfg.grid
    rows = grid.interior
    grad, hess = fd_partials(u, grid)
    values, grad, hess = u.full[rows], grad[rows], hess[rows]
    sensitivities = np.empty((rows.size, _JET_COMPONENTS))
    for component in range(_JET_COMPONENTS):
        eps = cfg.fd_jacobian_eps * np.maximum(1.0, np.abs(_jet_component(values, grad, hess, component)))
        for attempt in range(5):
            try:
                plus = _evaluate_jet(cfg, rows, *_perturbed_jet(values, grad, hess, component, eps))
                minus = _evaluate_jet(cfg, rows, *_perturbed_jet(values, grad, hess, component, -eps))
            except (NonSpacelikeError, AdmissibilityError, InvalidPsiError) as e:
                if attempt == 4:
                    raise
                logger.debug(f"Jet perturbation of component {component} rejected, halving ε: {e}")
                eps = 0.5 * eps
                continue
            sensitivities[:, component] = (plus.residual - minus.residual) / (2.0 * eps)
            break
    return sensitivities


def jacobian(u: NodalField, cfg: SolveConfig, logger: Logger = None) -> sparse.csr_matrix:
    """
    The Jacobian of the residual over the interior nodes.

    The residual at a row depends on the unknowns only through the jet
    (u, Du, D²u) there, and the jet is linear in the unknowns. Entries are
    the exact stencil weights of :func:`stencil_weights` contracted with
    central differences of the pointwise residual in the jet components,
    with ε = fd_jacobian_eps·max(1, |component|). The difference steps never
    see the 1/(ρΔθ)² scaling of the stencils near the pole.

    :raises NonSpacelikeError: If a perturbed jet stays non-spacelike after halving ε four times.
    :raises AdmissibilityError: If a perturbed jet stays inadmissible after halving ε four times.
    """
    logger = logger or _default_logger
    grid = cfg.grid
    weights = stencil_weights(grid)
    sensitivities = _jet_sensitivities(u, cfg, logger)
    rows = weights.rows
    local = sensitivities[rows]
    hess = weights.hess
    values = (
        local[:, 1] * weights.grad[:, 0]
        + local[:, 2] * weights.grad[:, 1]
        + local[:, 3] * hess[:, 0, 0]
        + local[:, 4] * 0.5 * (hess[:, 0, 1] + hess[:, 1, 0])
        + local[:, 5] * hess[:, 1, 1]
    )
    diagonal = grid.interior
    size = diagonal.size
    # duplicate (row, col) pairs are summed
    return sparse.csr_matrix(
        (
            np.concatenate([values, sensitivities[:, 0]]),
            (np.concatenate([rows, diagonal]), np.concatenate([weights.cols, diagonal])),
        ),
        shape=(size, size),
    )


def _linear_solve(matrix: sparse.csr_matrix, rhs: np.ndarray, logger: Logger) -> Optional[np.ndarray]:
    matrix = matrix.tocsc()
    delta = spsolve(matrix, rhs)
    if not np.all(np.isfinite(delta)):
        return None
    scale = sparse_norm(matrix, np.inf) * np.max(np.abs(delta)) + np.max(np.abs(rhs))
    error = np.max(np.abs(matrix @ delta - rhs))
    if error > 1e-12 * scale:
        delta = delta + spsolve(matrix, rhs - matrix @ delta)
        error = np.max(np.abs(matrix @ delta - rhs))
        if error > 1e-12 * scale:
            logger.warning(f"Linear solve residual {error:.3e} exceeds {1e-12 * scale:.3e}")
    return delta


class HomotopyStep:
    """
    Represents an accepted step of the continuation path.
    """

    __slots__ = ("t", "iterations", "residual")

    def __init__(self, t: float, iterations: int, residual: float) -> None:
        self.t = t
        self.iterations = iterations
        self.residual = residual

    def to_dict(self) -> dict:
        return {"t": self.t, "iterations": self.iterations, "residual": self.residual}

    def __repr__(self) -> str:
        return f"HomotopyStep(t={self.t}, iterations={self.iterations}, residual={self.residual:.3e})"


def _merge_margins(first: Optional[dict], second: Optional[dict]) -> Optional[dict]:
    if first is None:
        return second
    if second is None:
        return first
    return {key: min(first[key], second[key]) for key in first}


class SolveReport:
    """
    Represents the outcome of a solve: the nodal solution and its diagnostics.
    """

    __slots__ = (
        "u",
        "config",
        "converged",
        "reason",
        "newton_iterations",
        "residual_norm",
        "margins",
        "iterate_margins",
        "path",
        "t_reached",
        "_fields",
    )

    def __init__(
        self,
        u: NodalField,
        config: SolveConfig,
        converged: bool,
        reason: str,
        newton_iterations: list[int],
        residual_norm: float,
        margins: dict,
        iterate_margins: dict,
        path: Optional[list[HomotopyStep]] = None,
        t_reached: float = 1.0,
    ) -> None:
        self.u = u
        self.config = config
        self.converged = converged
        self.reason = reason
        self.newton_iterations = newton_iterations
        self.residual_norm = residual_norm
        self.margins = margins
        self.iterate_margins = iterate_margins
        self.path = path or []
        self.t_reached = t_reached
        self._fields = None

    @property
    def grid(self) -> Grid:
        return self.config.grid

    @property
    def total_newton_iterations(self) -> int:
        return int(sum(self.newton_iterations))

    @property
    def fields(self) -> GraphFields:
        """
        The derived quantities of the solution at every node, boundary ring included.
        """
        if self._fields is None:
            self._fields = graph_fields(self.u, self.grid)
        return self._fields

    def to_dict(self) -> dict:
        return {
            "converged": self.converged,
            "reason": self.reason,
            "k": self.config.k,
            "l": self.config.l,
            "grid": {"radius": self.grid.radius, "n_rho": self.grid.n_rho, "n_theta": self.grid.n_theta},
            "newton_iterations": list(self.newton_iterations),
            "total_newton_iterations": self.total_newton_iterations,
            "residual_norm": self.residual_norm,
            "min_spacelike_margin": self.margins["spacelike"],
            "min_cone_margins": {"sigma1": self.margins["sigma1"], "sigma2": self.margins["sigma2"]},
            "iterate_margins": dict(self.iterate_margins),
            "t_reached": self.t_reached,
            "path": [step.to_dict() for step in self.path],
        }

    def __repr__(self) -> str:
        return (
            f"SolveReport(converged={self.converged}, iterations={self.total_newton_iterations}, "
            f"residual={self.residual_norm:.3e}, t={self.t_reached})"
        )


def newton_solve(u0: NodalField, cfg: SolveConfig, logger: Logger = None) -> SolveReport:
    """
    Damped Newton iteration from ``u0``.

    Every trial iterate must be positive, spacelike and Γ_k-admissible at every
    interior node and must reduce the max-norm residual; otherwise the step is
    multiplied by ``cfg.damping`` down to ``cfg.min_step``.

    :param u0: The start, spacelike and admissible. Its boundary ring is overwritten with φ.
    :type u0: NodalField
    :param cfg: The problem.
    :type cfg: SolveConfig
    :raises NonSpacelikeError: If the start is not spacelike.
    :raises AdmissibilityError: If the start is not admissible.
    :return: The report, with ``converged=False`` when the iteration stalls.
    :rtype: SolveReport
    """
    logger = logger or _default_logger
    interior = cfg.grid.interior
    u = apply_boundary(u0, cfg.phi, cfg.grid)
    current = evaluate(u, cfg)
    norm = current.norm
    iterate_margins = current.margins()
    iterations = 0
    reason = "converged"

    while norm > cfg.newton_tol:
        if iterations >= cfg.max_newton:
            reason = f"max_newton ({cfg.max_newton}) exceeded"
            break
        delta = _linear_solve(jacobian(u, cfg, logger), -current.residual, logger)
        if delta is None:
            reason = "singular Jacobian"
            break
        step = 1.0
        accepted = None
        while step >= cfg.min_step:
            trial = u.shifted(step * delta, interior)
            try:
                candidate = evaluate(trial, cfg)
            except _REJECTED as e:
                logger.debug(f"Line search rejected step {step:g}: {e}")
            else:
                if candidate.norm < norm:
                    accepted = (trial, candidate)
                    break
                logger.debug(f"Line search rejected step {step:g}: residual {candidate.norm:.3e} >= {norm:.3e}")
            step *= cfg.damping
        if accepted is None:
            reason = "line search exhausted"
            break
        u, current = accepted
        norm = current.norm
        iterations += 1
        iterate_margins = _merge_margins(iterate_margins, current.margins())
        logger.debug(f"Newton iteration {iterations}: residual {norm:.3e}, step {step:g}")

    converged = norm <= cfg.newton_tol
    if not converged:
        logger.debug(f"Newton did not converge: {reason} (residual {norm:.3e})")
    return SolveReport(
        u, cfg, converged, reason, [iterations], norm, current.margins(), iterate_margins
    )


def _predict(previous: Optional[tuple], current: tuple, t_next: float) -> NodalField:
    t, u = current
    if previous is None:
        return u.copy()
    t_prev, u_prev = previous
    ratio = (t_next - t) / (t - t_prev)
    return NodalField(u.values + ratio * (u.values - u_prev.values), u.offset)


def homotopy_solve(cfg: SolveConfig, logger: Logger = None) -> SolveReport:
    """
    Continuation from exact umbilic data to the target problem.

    With c₀ the mean of φ on the boundary and ψ₀ the umbilic right-hand side,
    the problems ψ_t = (1-t)ψ₀ + tψ, φ_t = (1-t)c₀ + tφ are solved for t
    marching from 0 to 1, warm-started by a secant predictor. A failed step
    halves the t-step, down to ``cfg.min_t_step``.

    :return: The report at t = 1, or a non-converged report with the last good t.
    :rtype: SolveReport
    """
    logger = logger or _default_logger
    grid = cfg.grid
    c0 = float(np.mean(boundary_values(cfg.phi, grid)))
    start = NodalField.constant(grid, c0)

    first = apply_boundary(start, cfg.phi, grid)
    try:
        initial = evaluate(first, cfg)
    except _REJECTED:
        initial = None
    if initial is not None and initial.norm <= cfg.newton_tol:
        logger.info(f"Umbilic start u ≡ {c0:g} already solves the problem")
        margins = initial.margins()
        return SolveReport(
            first, cfg, True, "converged", [0], initial.norm, margins, margins, [HomotopyStep(1.0, 0, initial.norm)]
        )

    initial_step = 1.0 / cfg.homotopy_steps
    step = initial_step
    t = 0.0
    u = start
    previous = None
    path = []
    iterations = []
    iterate_margins = None
    last = None

    while t < 1.0:
        t_next = min(1.0, t + step)
        stage = cfg.at(t_next, c0)
        report = None
        guesses = [_predict(previous, (t, u), t_next)]
        if previous is not None:
            guesses.append(u.copy())
        for guess in guesses:
            try:
                report = newton_solve(guess, stage, logger)
            except _REJECTED as e:
                logger.debug(f"Start at t={t_next:g} rejected: {e}")
                continue
            if report.converged:
                break
        if report is not None and report.converged:
            previous = (t, u)
            t, u = t_next, report.u
            last = report
            path.append(HomotopyStep(t, report.total_newton_iterations, report.residual_norm))
            iterations.append(report.total_newton_iterations)
            iterate_margins = _merge_margins(iterate_margins, report.iterate_margins)
            logger.info(f"Homotopy reached t={t:.6g} in {report.total_newton_iterations} Newton iteration(s)")
            step = min(initial_step, 2.0 * step)
            continue
        step *= 0.5
        logger.debug(f"Homotopy step failed at t={t_next:g}, halving to {step:g}")
        if step < cfg.min_t_step:
            logger.warning(f"Homotopy step underflow, last good t={t:g}")
            if last is None:
                origin = cfg.at(0.0, c0)
                margins = evaluate(apply_boundary(u, origin.phi, grid), origin).margins()
                residual_norm = 0.0
            else:
                margins, residual_norm = last.margins, last.residual_norm
            return SolveReport(
                u,
                cfg,
                False,
                "homotopy step underflow",
                iterations,
                residual_norm,
                margins,
                iterate_margins or margins,
                path,
                t,
            )

    return SolveReport(u, cfg, True, "converged", iterations, last.residual_norm, last.margins, iterate_margins, path, 1.0)


class BarrierPair:
    """
    Represents the solutions of the two barrier problems.
    """

    __slots__ = ("upper", "lower")

    def __init__(self, upper: SolveReport, lower: SolveReport) -> None:
        self.upper = upper
        self.lower = lower

    @property
    def s_plus(self) -> NodalField:
        return self.upper.u

    @property
    def s_minus(self) -> NodalField:
        return self.lower.u

    @property
    def converged(self) -> bool:
        return self.upper.converged and self.lower.converged

    def __iter__(self):
        return iter((self.s_plus, self.s_minus))

    def to_dict(self) -> dict:
        return {"upper": self.upper.to_dict(), "lower": self.lower.to_dict()}


def barrier_configs(cfg: SolveConfig) -> tuple[SolveConfig, SolveConfig]:
    """
    The upper σ₂ problem and the lower σ_{k-1} problem for the main problem ``cfg``.

    :raises ConfigError: If the main problem is not k=2, l=0.
    """
    k, l = cfg.psi.k, cfg.psi.l
    if (cfg.k, cfg.l) != (2, 0) or (k, l) != (2, 0):
        raise ConfigError("Barriers are only available for the main problem k=2, l=0")
    upper = cfg.replace(k=2, l=0, rhs_scale=upper_barrier_scale(DIMENSION, k, l))
    lower = cfg.replace(k=k - 1, l=0, rhs_scale=lower_barrier_scale(DIMENSION, k, l))
    return upper, lower


def barrier_pair(cfg: SolveConfig, logger: Logger = None) -> BarrierPair:
    """
    Solve the upper (σ₂) and lower (σ₁) barrier problems with the same boundary data.
    Non-convergence is carried by the returned reports.
    """
    logger = logger or _default_logger
    upper, lower = barrier_configs(cfg)
    logger.info("Solving the upper barrier problem")
    upper_report = homotopy_solve(upper, logger)
    logger.info("Solving the lower barrier problem")
    lower_report = homotopy_solve(lower, logger)
    return BarrierPair(upper_report, lower_report)


class RefinementStudy:
    """
    Represents the errors against the manufactured solution over a sequence of grids.
    """

    __slots__ = ("levels", "errors", "reports")

    def __init__(self, levels: list[tuple[int, int]], errors: list[float], reports: list[SolveReport]) -> None:
        self.levels = levels
        self.errors = errors
        self.reports = reports

    @property
    def orders(self) -> list[float]:
        return convergence_order(self.errors)

    @property
    def converged(self) -> bool:
        return all(report.converged for report in self.reports)

    def to_dict(self) -> dict:
        return {
            "levels": [list(level) for level in self.levels],
            "errors": list(self.errors),
            "orders": self.orders,
            "converged": self.converged,
        }


def refinement_study(
    cfg: SolveConfig,
    levels: Sequence[tuple[int, int]],
    solution: ManufacturedSolution,
    logger: Logger = None,
) -> RefinementStudy:
    """
    Solve the manufactured problem on each grid level and measure the max-norm error.

    :param cfg: The template problem; its grid radius and tolerances are reused.
    :type cfg: SolveConfig
    :param levels: The (N_rho, N_theta) of each grid, each level halving h.
    :type levels: Sequence[tuple[int, int]]
    :param solution: The manufactured solution.
    :type solution: ManufacturedSolution
    :rtype: RefinementStudy
    """
    logger = logger or _default_logger
    errors = []
    reports = []
    for n_rho, n_theta in levels:
        grid = build_grid(cfg.grid.radius, n_rho, n_theta)
        level_cfg = cfg.replace(grid=grid, psi=solution.psi(grid, cfg.psi.k, cfg.psi.l), phi=solution.boundary())
        report = homotopy_solve(level_cfg, logger)
        error = float(np.max(np.abs(report.u.full - solution.value(grid.points.y))))
        logger.info(f"Grid {n_rho}x{n_theta}: max error {error:.3e}")
        errors.append(error)
        reports.append(report)
    return RefinementStudy([tuple(level) for level in levels], errors, reports)

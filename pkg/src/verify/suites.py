"""
Randomized property suites for the symmetric-function layer.

Samples are drawn in fixed-size chunks, each from its own child of a seeded
``SeedSequence``, so the results do not depend on the number of worker threads.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Iterable, Optional

import numpy as np
from loguru import logger as _default_logger

from ..algebra.sampling import random_gradient_pairs, random_nonnegative_matrices
from ..algebra.symfun import (
    EigenTuple,
    concavity_probe,
    elementary_symmetric,
    elementary_symmetric_enumerated,
    estimate_B0,
    matrix_quotient,
    matrix_quotient_lower_bound,
    newton_maclaurin_margin,
    quotient_gradient,
    quotient_power,
    sample_gamma_cone,
)
from ..logging import Logger

DEFAULT_TRIPLES = ((2, 2, 0), (3, 2, 0), (3, 3, 1), (4, 3, 0))
ORACLE_DIMENSIONS = (1, 2, 3, 4, 5, 6)
DEFAULT_SIZES = {
    "sigma_oracle": 1000,
    "ellipticity": 10_000,
    "newton_maclaurin": 10_000,
    "concavity": 10_000,
    "matrix_bound": 10_000,
    "b0": 100_000,
}
MARGIN_TOLERANCE = 1e-10
ORACLE_TOLERANCE = 1e-12
B0_STABILITY = 0.10
CHUNK = 2500
RHO = 0.9


class SuiteResult:
    """
    Represents one randomized suite: its worst margin and whether it passed.
    """

    __slots__ = ("name", "n", "k", "l", "samples", "worst_margin", "passed", "detail")

    def __init__(
        self,
        name: str,
        n: int,
        k: int,
        l: int,
        samples: int,
        worst_margin: float,
        passed: bool,
        detail: Optional[dict] = None,
    ) -> None:
        self.name = name
        self.n = n
        self.k = k
        self.l = l
        self.samples = samples
        self.worst_margin = worst_margin
        self.passed = passed
        self.detail = detail or {}

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "samples": self.samples,
            "worst_margin": self.worst_margin,
            "passed": self.passed,
            **self.detail,
        }

    def __repr__(self) -> str:
        return f"SuiteResult({self.name}, n={self.n}, k={self.k}, l={self.l}, margin={self.worst_margin:.3e}, passed={self.passed})"


class SuiteReport:
    """
    Represents the aggregated outcome of the algebraic suites.
    """

    __slots__ = ("seed", "results")

    def __init__(self, seed: int, results: list[SuiteResult]) -> None:
        self.seed = seed
        self.results = results

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def worst_margin(self) -> float:
        return min(result.worst_margin for result in self.results)

    def to_dict(self) -> dict:
        return {"seed": self.seed, "passed": self.passed, "results": [result.to_dict() for result in self.results]}

    def table(self) -> str:
        """
        A fixed-width text table of the results.
        """
        lines = [f"{'suite':<18} {'n':>2} {'k':>2} {'l':>2} {'samples':>8} {'worst margin':>14}  status"]
        for result in self.results:
            lines.append(
                f"{result.name:<18} {result.n:>2} {result.k:>2} {result.l:>2} {result.samples:>8} "
                f"{result.worst_margin:>14.6e}  {'ok' if result.passed else 'FAIL'}"
            )
        return "\n".join(lines)


def _chunked_min(seed: Iterable[int], samples: int, work: Callable[[np.random.Generator, int], Any], threads: int):
    """
    The minimum of ``work`` over all chunks, componentwise when it returns a tuple.
    """
    sizes = [CHUNK] * (samples // CHUNK) + ([samples % CHUNK] if samples % CHUNK else [])
    children = np.random.SeedSequence(list(seed)).spawn(len(sizes))
    jobs = [(np.random.default_rng(child), size) for child, size in zip(children, sizes)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            margins = list(pool.map(lambda job: work(*job), jobs))
    else:
        margins = [work(*job) for job in jobs]
    values = np.asarray(margins, dtype=float)
    if values.ndim > 1:
        return tuple(float(value) for value in values.min(axis=0))
    return float(values.min())


def _margin_result(name: str, n: int, k: int, l: int, samples: int, margin: float, relative: float) -> SuiteResult:
    return SuiteResult(name, n, k, l, samples, margin, margin >= -MARGIN_TOLERANCE, {"relative_margin": relative})


def sigma_oracle_suite(seed: int, n: int, samples: int, threads: int = 1) -> SuiteResult:
    """
    The recurrence against subset enumeration, for every k = 0..n. The margin is
    minus the worst relative error.
    """

    def work(rng: np.random.Generator, size: int) -> float:
        lam = EigenTuple(rng.uniform(-1.0, 3.0, size=(size, n)))
        worst = 0.0
        for k in range(n + 1):
            fast = np.asarray(elementary_symmetric(lam, k))
            exact = np.asarray(elementary_symmetric_enumerated(lam, k))
            scale = np.maximum(1.0, np.abs(exact))
            worst = max(worst, float(np.max(np.abs(fast - exact) / scale)))
        return -worst

    margin = _chunked_min((seed, 0, n), samples, work, threads)
    return SuiteResult("sigma_oracle", n, n, 0, samples, margin, margin >= -ORACLE_TOLERANCE)


def ellipticity_suite(seed: int, n: int, k: int, l: int, samples: int, threads: int = 1) -> SuiteResult:
    """
    The smallest component of ∂(σ_k/σ_l)/∂λ over random tuples of Γ_k; must be positive.
    """

    def work(rng: np.random.Generator, size: int) -> float:
        lam = sample_gamma_cone(rng, n, k, size)
        return float(np.min(quotient_gradient(lam, k, l)))

    margin = _chunked_min((seed, 1, n, k, l), samples, work, threads)
    return SuiteResult("ellipticity", n, k, l, samples, margin, margin > 0)


def newton_maclaurin_suite(seed: int, n: int, k: int, l: int, samples: int, threads: int = 1) -> SuiteResult:
    """
    The generalized Newton-Maclaurin margin over Γ_k. The raw margin decides;
    the margin relative to the size of its terms is reported as ``relative_margin``.
    """

    def work(rng: np.random.Generator, size: int) -> tuple[float, float]:
        lam = sample_gamma_cone(rng, n, k, size)
        margin = np.asarray(newton_maclaurin_margin(lam, k, l))
        scale = np.maximum(
            1.0, np.abs(elementary_symmetric(lam, k) / math.comb(n, k) * elementary_symmetric(lam, l - 1) / math.comb(n, l - 1))
        )
        return float(np.min(margin)), float(np.min(margin / scale))

    margin, relative = _chunked_min((seed, 2, n, k, l), samples, work, threads)
    return _margin_result("newton_maclaurin", n, k, l, samples, margin, relative)


def concavity_suite(seed: int, n: int, k: int, l: int, samples: int, threads: int = 1) -> SuiteResult:
    """
    Midpoint concavity of (σ_k/σ_l)^{1/(k-l)} over random pairs of Γ_k.
    The raw margin decides; ``relative_margin`` divides by max(1, F(a) + F(b)).
    """

    def work(rng: np.random.Generator, size: int) -> tuple[float, float]:
        a = sample_gamma_cone(rng, n, k, size)
        b = sample_gamma_cone(rng, n, k, size)
        midpoint = np.asarray(concavity_probe(a, b, k, l))
        scale = np.maximum(1.0, np.asarray(quotient_power(a, k, l)) + np.asarray(quotient_power(b, k, l)))
        return float(np.min(midpoint)), float(np.min(midpoint / scale))

    margin, relative = _chunked_min((seed, 3, n, k, l), samples, work, threads)
    return _margin_result("concavity", n, k, l, samples, margin, relative)


def matrix_bound_suite(seed: int, n: int, k: int, l: int, samples: int, threads: int = 1) -> SuiteResult:
    """
    F_k/F_l(g^{ij}(Dp)q) >= (1-ρ²)p^{-2(k-l)}F_k/F_l(q) for non-negative q and |Dp|/p <= 0.9.
    """

    def work(rng: np.random.Generator, size: int) -> tuple[float, float]:
        q = random_nonnegative_matrices(rng, n, size)
        p, dp = random_gradient_pairs(rng, n, size, RHO)
        value = np.asarray(matrix_quotient(p, dp, q, k, l))
        bound = np.asarray(matrix_quotient_lower_bound(p, dp, q, k, l))
        gap = value - bound
        return float(np.min(gap)), float(np.min(gap / np.maximum(1.0, np.abs(bound))))

    margin, relative = _chunked_min((seed, 4, n, k, l), samples, work, threads)
    return _margin_result("matrix_bound", n, k, l, samples, margin, relative)


def b0_suite(seed: int, n: int, k: int, l: int, samples: int) -> SuiteResult:
    """
    The empirical 𝓑₀(n, k, l) for two seeds; passes when finite and stable within 10%.
    The margin is the stability slack 0.1 - relative difference.
    """
    first = estimate_B0(samples, n, k, l, seed)
    second = estimate_B0(samples, n, k, l, seed + 1)
    finite = math.isfinite(first.value) and math.isfinite(second.value)
    scale = max(first.value, second.value)
    spread = abs(first.value - second.value) / scale if scale > 0 else 0.0
    margin = B0_STABILITY - spread
    return SuiteResult(
        "b0",
        n,
        k,
        l,
        samples,
        margin,
        finite and margin >= 0,
        {"estimate": first.value, "estimate_second_seed": second.value, "skipped": first.skipped + second.skipped},
    )


def algebraic_suites(
    seed: int,
    sizes: Optional[dict] = None,
    triples: Iterable[tuple[int, int, int]] = DEFAULT_TRIPLES,
    threads: int = 1,
    logger: Logger = None,
    oracle_dimensions: Iterable[int] = ORACLE_DIMENSIONS,
) -> SuiteReport:
    """
    Run every randomized suite for each (n, k, l) and aggregate the worst margins.

    :param seed: The master seed.
    :type seed: int
    :param sizes: Samples per suite, keyed like ``DEFAULT_SIZES``.
    :type sizes: dict
    :param triples: The (n, k, l) to test.
    :type triples: Iterable[tuple[int, int, int]]
    :param threads: Worker threads for the chunked suites.
    :type threads: int
    :param oracle_dimensions: The dimensions of the σ_k oracle, run whatever the triples are.
    :type oracle_dimensions: Iterable[int]
    :rtype: SuiteReport
    """
    logger = logger or _default_logger
    sizes = {**DEFAULT_SIZES, **(sizes or {})}
    results = [sigma_oracle_suite(seed, n, sizes["sigma_oracle"], threads) for n in oracle_dimensions]
    for n, k, l in triples:
        results.append(ellipticity_suite(seed, n, k, l, sizes["ellipticity"], threads))
        nm_l = max(l, 1)
        if nm_l < k:
            results.append(newton_maclaurin_suite(seed, n, k, nm_l, sizes["newton_maclaurin"], threads))
        results.append(concavity_suite(seed, n, k, l, sizes["concavity"], threads))
        results.append(matrix_bound_suite(seed, n, k, l, sizes["matrix_bound"], threads))
        results.append(b0_suite(seed, n, k, l, sizes["b0"]))
        logger.debug(f"Suites for (n, k, l) = ({n}, {k}, {l}) finished")
    report = SuiteReport(seed, results)
    for result in results:
        if not result.passed:
            logger.warning(f"Suite {result.name} failed for (n, k, l) = ({result.n}, {result.k}, {result.l})")
    return report

"""
Elementary symmetric functions, Hessian quotients and Garding cones.

Every operation accepts a single tuple of principal curvatures or a batch of
them (leading axes, the last axis holds the n curvatures) and returns a float
or an array of matching batch shape.
"""

import itertools
import math
from typing import Union

import numpy as np

from ..errors import AdmissibilityError, DomainError, NonSpacelikeError, SingularQuotientError

ArrayLike = Union[np.ndarray, list, tuple, float]


class EigenTuple:
    """
    Represents an ordered tuple (or a batch of tuples) of principal curvatures.
    """

    __slots__ = ("_values", "_admissible")

    def __init__(self, values: ArrayLike, admissible: int = None) -> None:
        """
        Initialize the eigen tuple.

        :param values: The principal curvatures, the last axis has length n.
        :type values: ArrayLike
        :param admissible: The order k the tuple is known to be k-admissible for.
        :type admissible: int
        :raises DomainError: If the tuple is empty or has non-finite entries.
        """
        arr = np.asarray(values, dtype=float)
        if arr.ndim == 0:
            arr = arr.reshape(1)
        if arr.shape[-1] < 1:
            raise DomainError("An eigen tuple needs at least one entry")
        if not np.all(np.isfinite(arr)):
            raise DomainError("Eigen tuple entries must be finite")
        self._values = arr
        self._admissible = admissible

    @property
    def values(self) -> np.ndarray:
        """
        The principal curvatures.
        """
        return self._values

    @property
    def n(self) -> int:
        """
        The dimension n.
        """
        return self._values.shape[-1]

    @property
    def batch_shape(self) -> tuple:
        """
        The leading (batch) axes, empty for a single tuple.
        """
        return self._values.shape[:-1]

    @property
    def admissible(self) -> int:
        """
        The order k this tuple was tagged k-admissible for, or None.
        """
        return self._admissible

    def tag(self, k: int) -> "EigenTuple":
        """
        Tag the tuple as k-admissible after checking membership of Γ_k.

        :raises AdmissibilityError: If some tuple is not in Γ_k.
        """
        inside = np.asarray(in_gamma_cone(self, k))
        if not np.all(inside):
            raise AdmissibilityError(
                f"Tuple is not {k}-admissible",
                nodes=np.flatnonzero(~inside.reshape(-1)),
                margin=float(np.min(cone_margin(self, k))),
            )
        return EigenTuple(self._values, admissible=k)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        if self.batch_shape:
            return f"EigenTuple(batch={self.batch_shape}, n={self.n})"
        return f"EigenTuple({np.array2string(self._values, precision=6)})"


def _as_tuple(lam: Union[EigenTuple, ArrayLike]) -> EigenTuple:
    return lam if isinstance(lam, EigenTuple) else EigenTuple(lam)


def _scalar(value: np.ndarray):
    value = np.asarray(value)
    if value.ndim == 0:
        return value.item()
    return value


def _sigma(values: np.ndarray, k: int) -> np.ndarray:
    # e_k(λ_1..λ_m) = e_k(λ_1..λ_{m-1}) + λ_m e_{k-1}(λ_1..λ_{m-1})
    n = values.shape[-1]
    if k < 0 or k > n:
        return np.zeros(values.shape[:-1])
    e = [np.ones(values.shape[:-1])] + [np.zeros(values.shape[:-1]) for _ in range(k)]
    for m in range(n):
        lam_m = values[..., m]
        for j in range(min(m + 1, k), 0, -1):
            e[j] = e[j] + lam_m * e[j - 1]
    return e[k]


def _sigma_excluded(values: np.ndarray, k: int) -> np.ndarray:
    n = values.shape[-1]
    out = np.empty(values.shape)
    for i in range(n):
        out[..., i] = _sigma(np.delete(values, i, axis=-1), k)
    return out


def _check_pair(n: int, k: int, l: int) -> None:
    if not 0 <= l < k <= n:
        raise DomainError(f"Quotient orders must satisfy 0 <= l < k <= n, got k={k}, l={l}, n={n}")


def elementary_symmetric(lam: Union[EigenTuple, ArrayLike], k: int):
    """
    The k-th elementary symmetric function σ_k(λ).

    :param lam: The principal curvatures.
    :type lam: EigenTuple
    :param k: The order, 0 <= k <= n. σ_0 is 1.
    :type k: int
    :raises DomainError: If k is outside 0..n.
    :return: σ_k(λ).
    :rtype: float or np.ndarray
    """
    lam = _as_tuple(lam)
    if not 0 <= k <= lam.n:
        raise DomainError(f"Order k={k} is outside 0..{lam.n}")
    return _scalar(_sigma(lam.values, k))


def elementary_symmetric_enumerated(lam: Union[EigenTuple, ArrayLike], k: int):
    """
    σ_k by explicit enumeration of all k-subsets.
    Kept as an oracle for the recurrence used by :func:`elementary_symmetric`.
    """
    lam = _as_tuple(lam)
    if not 0 <= k <= lam.n:
        raise DomainError(f"Order k={k} is outside 0..{lam.n}")
    total = np.zeros(lam.batch_shape)
    for subset in itertools.combinations(range(lam.n), k):
        total = total + np.prod(lam.values[..., list(subset)], axis=-1)
    return _scalar(total)


def sigma_excluding(lam: Union[EigenTuple, ArrayLike], k: int, i: int):
    """
    σ_k(λ|i), the k-th elementary symmetric function of λ with entry i removed.

    :param lam: The principal curvatures.
    :type lam: EigenTuple
    :param k: The order, 0 <= k <= n-1.
    :type k: int
    :param i: The zero-based index of the removed entry.
    :type i: int
    :raises DomainError: If k or i is out of range.
    """
    lam = _as_tuple(lam)
    if not 0 <= i < lam.n:
        raise DomainError(f"Index i={i} is outside 0..{lam.n - 1}")
    if not 0 <= k <= lam.n - 1:
        raise DomainError(f"Order k={k} is outside 0..{lam.n - 1}")
    return _scalar(_sigma(np.delete(lam.values, i, axis=-1), k))


def hessian_quotient(lam: Union[EigenTuple, ArrayLike], k: int, l: int):
    """
    The Hessian quotient σ_k(λ)/σ_l(λ).

    :raises DomainError: If not 0 <= l < k <= n.
    :raises SingularQuotientError: If σ_l(λ) vanishes.
    """
    lam = _as_tuple(lam)
    _check_pair(lam.n, k, l)
    denominator = _sigma(lam.values, l)
    if np.any(denominator == 0):
        raise SingularQuotientError(f"σ_{l} vanishes, the quotient σ_{k}/σ_{l} is singular")
    return _scalar(_sigma(lam.values, k) / denominator)


def quotient_gradient(lam: Union[EigenTuple, ArrayLike], k: int, l: int) -> np.ndarray:
    """
    The gradient of σ_k/σ_l with respect to λ,

        ∂_i(σ_k/σ_l) = (σ_{k-1}(λ|i)σ_l - σ_k σ_{l-1}(λ|i)) / σ_l².

    For l = 0 this is σ_{k-1}(λ|i).

    :param lam: The principal curvatures.
    :type lam: EigenTuple
    :param k: The numerator order.
    :type k: int
    :param l: The denominator order.
    :type l: int
    :raises SingularQuotientError: If σ_l(λ) vanishes.
    :return: The gradient, same shape as ``lam.values``.
    :rtype: np.ndarray
    """
    lam = _as_tuple(lam)
    _check_pair(lam.n, k, l)
    values = lam.values
    sigma_l = _sigma(values, l)
    if np.any(sigma_l == 0):
        raise SingularQuotientError(f"σ_{l} vanishes, the quotient σ_{k}/σ_{l} is singular")
    sigma_k = _sigma(values, k)
    numerator = (
        _sigma_excluded(values, k - 1) * sigma_l[..., None]
        - sigma_k[..., None] * _sigma_excluded(values, l - 1)
    )
    return numerator / (sigma_l**2)[..., None]


def quotient_gradient_excluded_form(lam: Union[EigenTuple, ArrayLike], k: int, l: int) -> np.ndarray:
    """
    The same gradient written with excluded functions only,
    (σ_{k-1}(λ|i)σ_l(λ|i) - σ_k(λ|i)σ_{l-1}(λ|i)) / σ_l².
    """
    lam = _as_tuple(lam)
    _check_pair(lam.n, k, l)
    values = lam.values
    sigma_l = _sigma(values, l)
    if np.any(sigma_l == 0):
        raise SingularQuotientError(f"σ_{l} vanishes, the quotient σ_{k}/σ_{l} is singular")
    numerator = _sigma_excluded(values, k - 1) * _sigma_excluded(values, l) - _sigma_excluded(
        values, k
    ) * _sigma_excluded(values, l - 1)
    return numerator / (sigma_l**2)[..., None]


def in_gamma_cone(lam: Union[EigenTuple, ArrayLike], k: int):
    """
    Whether λ lies in the open Garding cone Γ_k = {σ_j(λ) > 0, j = 1..k}.
    Strict inequalities, no tolerance.
    """
    lam = _as_tuple(lam)
    if not 1 <= k <= lam.n:
        raise DomainError(f"Cone order k={k} is outside 1..{lam.n}")
    inside = np.ones(lam.batch_shape, dtype=bool)
    for j in range(1, k + 1):
        inside &= _sigma(lam.values, j) > 0
    return _scalar(inside)


def cone_margin(lam: Union[EigenTuple, ArrayLike], k: int):
    """
    min_{j<=k} σ_j(λ), positive iff λ is in Γ_k.
    """
    lam = _as_tuple(lam)
    if not 1 <= k <= lam.n:
        raise DomainError(f"Cone order k={k} is outside 1..{lam.n}")
    margins = np.stack([_sigma(lam.values, j) for j in range(1, k + 1)], axis=-1)
    return _scalar(margins.min(axis=-1))


def quotient_power(lam: Union[EigenTuple, ArrayLike], k: int, l: int):
    """
    The normalized operator F(λ) = (σ_k/σ_l)^{1/(k-l)}, homogeneous of degree one.

    :raises AdmissibilityError: If λ is not in Γ_k.
    """
    lam = _as_tuple(lam)
    _check_pair(lam.n, k, l)
    inside = np.asarray(in_gamma_cone(lam, k))
    if not np.all(inside):
        raise AdmissibilityError(
            f"λ is not in Γ_{k}",
            nodes=np.flatnonzero(~inside.reshape(-1)),
            margin=float(np.min(cone_margin(lam, k))),
        )
    ratio = _sigma(lam.values, k) / _sigma(lam.values, l)
    return _scalar(ratio ** (1.0 / (k - l)))


def newton_maclaurin_margin(lam: Union[EigenTuple, ArrayLike], k: int, l: int):
    """
    The raw margin of the generalized Newton-Maclaurin inequality,

        σ_{k-1}/C(n,k-1) · σ_l/C(n,l) - σ_k/C(n,k) · σ_{l-1}/C(n,l-1),

    which is non-negative on Γ_k for 1 <= l < k <= n. The caller decides on the tolerance.
    """
    lam = _as_tuple(lam)
    n = lam.n
    if not 1 <= l < k <= n:
        raise DomainError(f"Newton-Maclaurin needs 1 <= l < k <= n, got k={k}, l={l}, n={n}")
    values = lam.values
    normalized = {j: _sigma(values, j) / math.comb(n, j) for j in (k - 1, k, l - 1, l)}
    return _scalar(normalized[k - 1] * normalized[l] - normalized[k] * normalized[l - 1])


def concavity_probe(
    a: Union[EigenTuple, ArrayLike], b: Union[EigenTuple, ArrayLike], k: int, l: int
):
    """
    Midpoint concavity probe F((a+b)/2) - (F(a)+F(b))/2 of F = (σ_k/σ_l)^{1/(k-l)}.
    Non-negative on the convex cone Γ_k.

    :raises AdmissibilityError: If a, b or their midpoint is not in Γ_k.
    """
    a, b = _as_tuple(a), _as_tuple(b)
    midpoint = EigenTuple((a.values + b.values) / 2.0)
    # Γ_k is convex, so a failure here means a or b was not admissible.
    mid_value = quotient_power(midpoint, k, l)
    return _scalar(
        np.asarray(mid_value) - 0.5 * (np.asarray(quotient_power(a, k, l)) + np.asarray(quotient_power(b, k, l)))
    )


def inverse_gradient_metric(p: ArrayLike, dp: ArrayLike) -> np.ndarray:
    """
    g^{ij}(Dp) = (δ_ij + p_i p_j / (p² - |Dp|²)) / p² in a Euclidean frame.

    :raises NonSpacelikeError: If |Dp| >= p.
    """
    p = np.asarray(p, dtype=float)
    dp = np.asarray(dp, dtype=float)
    gap = p**2 - np.sum(dp**2, axis=-1)
    if np.any(gap <= 0):
        raise NonSpacelikeError("|Dp| must be smaller than p", margin=float(np.min(gap)))
    n = dp.shape[-1]
    outer = dp[..., :, None] * dp[..., None, :]
    return (np.eye(n) + outer / gap[..., None, None]) / (p**2)[..., None, None]


def matrix_quotient(p: ArrayLike, dp: ArrayLike, q: ArrayLike, k: int, l: int):
    """
    The quotient F_k/F_l of the eigenvalues of g^{ij}(Dp)·q.

    g^{ij}(Dp) is positive definite, so with g^{ij} = L Lᵀ the product is similar
    to the symmetric matrix Lᵀ q L and its eigenvalues are real.

    :param p: The positive function value.
    :type p: float or np.ndarray
    :param dp: The gradient Dp, |Dp| < p.
    :type dp: np.ndarray
    :param q: A symmetric matrix.
    :type q: np.ndarray
    :param k: The numerator order.
    :type k: int
    :param l: The denominator order.
    :type l: int
    :raises NonSpacelikeError: If |Dp| >= p.
    :raises SingularQuotientError: If F_l vanishes.
    """
    metric = inverse_gradient_metric(p, dp)
    factor = np.linalg.cholesky(metric)
    q = np.asarray(q, dtype=float)
    reduced = np.swapaxes(factor, -1, -2) @ q @ factor
    reduced = 0.5 * (reduced + np.swapaxes(reduced, -1, -2))
    eigenvalues = np.linalg.eigvalsh(reduced)
    return hessian_quotient(EigenTuple(eigenvalues), k, l)


def matrix_quotient_lower_bound(p: ArrayLike, dp: ArrayLike, q: ArrayLike, k: int, l: int):
    """
    The lower bound (1 - ρ²)(1/p²)^{k-l}·F_k/F_l(q) with ρ = |Dp|/p, valid for non-negative q.
    """
    p = np.asarray(p, dtype=float)
    rho_squared = np.sum(np.asarray(dp, dtype=float) ** 2, axis=-1) / p**2
    eigenvalues = np.linalg.eigvalsh(np.asarray(q, dtype=float))
    base = np.asarray(hessian_quotient(EigenTuple(eigenvalues), k, l))
    return _scalar((1.0 - rho_squared) * p ** (-2.0 * (k - l)) * base)


def sample_gamma_cone(
    rng: np.random.Generator, n: int, k: int, size: int, low: float = -1.0, high: float = 3.0
) -> EigenTuple:
    """
    Draw tuples uniformly from the box [low, high]^n and keep those inside Γ_k.

    :param rng: The random generator, consumed in a fixed order.
    :type rng: np.random.Generator
    :param n: The dimension.
    :type n: int
    :param k: The cone order.
    :type k: int
    :param size: The number of tuples to return.
    :type size: int
    :return: A batch of ``size`` tuples, each in Γ_k.
    :rtype: EigenTuple
    """
    if not 1 <= k <= n:
        raise DomainError(f"Cone order k={k} is outside 1..{n}")
    accepted = []
    count = 0
    batch = max(2 * size, 64)
    while count < size:
        draw = rng.uniform(low, high, size=(batch, n))
        keep = draw[np.asarray(in_gamma_cone(EigenTuple(draw), k))]
        accepted.append(keep)
        count += keep.shape[0]
    return EigenTuple(np.concatenate(accepted)[:size], admissible=k)


class B0Estimate:
    """
    Represents an empirical estimate of the constant 𝓑₀(n, k, l).
    """

    __slots__ = ("_value", "_samples", "_skipped", "_n", "_k", "_l")

    def __init__(self, value: float, samples: int, skipped: int, n: int, k: int, l: int) -> None:
        self._value = value
        self._samples = samples
        self._skipped = skipped
        self._n, self._k, self._l = n, k, l

    @property
    def value(self) -> float:
        """
        The empirical supremum, clamped below by 0.
        """
        return self._value

    @property
    def samples(self) -> int:
        """
        The number of sampled tuples.
        """
        return self._samples

    @property
    def skipped(self) -> int:
        """
        The number of (tuple, index) candidates skipped for a degenerate denominator.
        """
        return self._skipped

    def __float__(self) -> float:
        return self._value

    def __repr__(self) -> str:
        return (
            f"B0Estimate(n={self._n}, k={self._k}, l={self._l}, value={self._value:.6g}, "
            f"samples={self._samples}, skipped={self._skipped})"
        )


def b0_candidates(lam: Union[EigenTuple, ArrayLike], k: int, l: int) -> tuple[np.ndarray, np.ndarray]:
    """
    The candidate ratios of the 𝓑₀ inequality for every entry i,

        (f_i λ_i² - λ_i f) / Σ_{j≠i} f_j λ_j²,   f = σ_k/σ_l, f_i = ∂f/∂λ_i.

    :return: The ratios and a mask of degenerate denominators.
    :rtype: tuple[np.ndarray, np.ndarray]
    """
    lam = _as_tuple(lam)
    f = np.asarray(hessian_quotient(lam, k, l))
    grad = quotient_gradient(lam, k, l)
    weighted = grad * lam.values**2
    numerator = weighted - lam.values * f[..., None]
    denominator = weighted.sum(axis=-1, keepdims=True) - weighted
    scale = np.maximum(1.0, np.abs(weighted).sum(axis=-1, keepdims=True))
    degenerate = denominator <= 1e-14 * scale
    safe = np.where(degenerate, 1.0, denominator)
    return np.where(degenerate, 0.0, numerator / safe), degenerate


def estimate_B0(samples: int, n: int, k: int, l: int, rng_seed: int) -> B0Estimate:
    """
    Estimate 𝓑₀(n, k, l) as the supremum of :func:`b0_candidates` over random
    tuples of Γ_k, clamped below by 0.

    :param samples: The number of sampled tuples, at least 1.
    :type samples: int
    :param n: The dimension.
    :type n: int
    :param k: The numerator order.
    :type k: int
    :param l: The denominator order.
    :type l: int
    :param rng_seed: The seed of the sampler.
    :type rng_seed: int
    :return: The estimate together with the number of skipped candidates.
    :rtype: B0Estimate
    """
    if samples < 1:
        raise DomainError("At least one sample is required")
    _check_pair(n, k, l)
    rng = np.random.default_rng(rng_seed)
    lam = sample_gamma_cone(rng, n, k, samples)
    ratios, degenerate = b0_candidates(lam, k, l)
    value = max(0.0, float(ratios.max()))
    return B0Estimate(value, samples, int(degenerate.sum()), n, k, l)

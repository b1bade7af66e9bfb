"""Pairwise-comparison matrices, priority estimation and consistency diagnostics.

Priorities are computed as row geometric means, the closed-form minimizer of
the logarithmic least-squares objective. All consistency indices (CI, RI, CR,
GCI, the regression bound on the principal eigenvalue) operate on the matrix
as given; strict reciprocity is not required.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, ValidationError

# The 17-value judgment scale: 1..9 and their reciprocals.
SAATY_VALUES = np.array(
    [1 / k for k in range(9, 1, -1)] + [float(k) for k in range(1, 10)]
)

CR_ACCEPTANCE_THRESHOLD = 0.10

# Regression bound on the principal eigenvalue (Alonso-Lamata): a matrix is
# acceptable when lambda_max < _AL_SLOPE * n - _AL_OFFSET.
_AL_SLOPE = 1.17699
_AL_OFFSET = 0.43513

# Fixed chunk size for counter-based Monte-Carlo seeding. Sample chunk c of a
# run with seed s and size n is always generated from default_rng((s, n, c)),
# so any partitioning of whole chunks across workers yields identical streams.
MC_CHUNK = 4096


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    reciprocity_deviation: float = 0.0


def validate(entries, enforce_scale: bool = False) -> ValidationReport:
    """Check a raw square array of judgments.

    Positivity and unit-diagonal violations are errors; deviation from
    reciprocity is reported as a warning only, with the metric
    max_{i<j} |log(a_ij * a_ji)|.
    """
    a = np.asarray(entries, dtype=float)
    errors: list[str] = []
    warnings: list[str] = []
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return ValidationReport(False, [f"matrix is not square: shape {a.shape}"])
    n = a.shape[0]
    if n < 2:
        errors.append(f"dimension must be >= 2, got {n}")
    bad = ~np.isfinite(a) | (a <= 0)
    for i, j in zip(*np.nonzero(bad)):
        errors.append(f"entry ({i},{j}) = {a[i, j]} is not a positive finite number")
    for i in range(n):
        if np.isfinite(a[i, i]) and a[i, i] != 1.0:
            errors.append(f"diagonal entry ({i},{i}) = {a[i, i]} must be exactly 1")
    if enforce_scale and not bad.any():
        for i in range(n):
            for j in range(n):
                if i != j and not np.any(np.isclose(a[i, j], SAATY_VALUES, rtol=1e-6)):
                    errors.append(f"entry ({i},{j}) = {a[i, j]} is outside the 1-9 scale")
    deviation = 0.0
    if not bad.any() and n >= 2:
        logs = np.log(a)
        deviation = float(np.max(np.abs(np.triu(logs + logs.T, k=1))))
        if deviation > 1e-9:
            warnings.append(
                f"matrix is not exactly reciprocal (max |log(a_ij*a_ji)| = {deviation:.4g})"
            )
    return ValidationReport(not errors, errors, warnings, deviation)


class PairwiseMatrix:
    """Square positive judgment matrix with unit diagonal.

    Reciprocity is not enforced; use :meth:`reciprocity_deviation` to measure
    how far the matrix is from reciprocal.
    """

    def __init__(self, entries, enforce_scale: bool = False):
        report = validate(entries, enforce_scale=enforce_scale)
        if not report.ok:
            raise ValidationError("invalid pairwise matrix", report.errors)
        a = np.array(entries, dtype=float)
        a.setflags(write=False)
        self._entries = a

    @classmethod
    def from_weights(cls, weights) -> "PairwiseMatrix":
        """Fully consistent matrix a_ij = w_i / w_j."""
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.size < 2 or np.any(w <= 0):
            raise ValidationError("weights must be a positive vector of length >= 2")
        a = np.outer(w, 1.0 / w)
        np.fill_diagonal(a, 1.0)
        return cls(a)

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def n(self) -> int:
        return self._entries.shape[0]

    def reciprocity_deviation(self) -> float:
        logs = np.log(self._entries)
        return float(np.max(np.abs(np.triu(logs + logs.T, k=1))))

    def is_reciprocal(self, tol: float = 1e-9) -> bool:
        return self.reciprocity_deviation() <= tol

    def __repr__(self):
        return f"PairwiseMatrix(n={self.n})"


@dataclass(frozen=True)
class PriorityVector:
    """Positive weight vector, normalized either to unit sum or unit product."""

    weights: np.ndarray
    normalization: str  # "sum" or "product"

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if np.any(w <= 0):
            raise ValidationError("priority weights must all be positive")
        if self.normalization == "sum":
            if abs(w.sum() - 1.0) > 1e-12:
                raise ValidationError(f"weights sum to {w.sum()}, expected 1")
        elif self.normalization == "product":
            if abs(np.exp(np.log(w).sum()) - 1.0) > 1e-12:
                raise ValidationError("weight product differs from 1")
        else:
            raise ValidationError(f"unknown normalization {self.normalization!r}")

    def __len__(self):
        return self.weights.size


def geometric_mean_priorities(
    matrix: PairwiseMatrix, normalization: str = "sum"
) -> PriorityVector:
    """Row geometric means of the matrix, computed in log-space.

    For a fully consistent matrix this recovers the underlying weight ratios
    exactly (up to normalization).
    """
    logs = np.log(matrix.entries)
    if not np.all(np.isfinite(logs)):
        raise ValidationError("entry magnitude out of floating-point range")
    row_means = logs.mean(axis=1)
    if normalization == "product":
        w = np.exp(row_means - row_means.mean())
    else:
        w = np.exp(row_means - row_means.max())
        w = w / w.sum()
    return PriorityVector(w, normalization)


def lls_objective(matrix: PairwiseMatrix, w: PriorityVector | np.ndarray) -> float:
    """Sum of squared log residuals sum_ij (log a_ij - log w_i + log w_j)^2.

    Invariant under rescaling of w; zero iff w fits the matrix exactly.
    """
    weights = w.weights if isinstance(w, PriorityVector) else np.asarray(w, dtype=float)
    if weights.size != matrix.n:
        raise ValidationError("weight vector length does not match matrix dimension")
    if np.any(weights <= 0):
        raise ValidationError("weights must be positive")
    lw = np.log(weights)
    resid = np.log(matrix.entries) - lw[:, None] + lw[None, :]
    return float(np.sum(resid**2))


def _power_iteration_batch(mats: np.ndarray, tol: float, max_iter: int):
    """Principal eigenvalues of a batch of positive matrices, shape (S, n, n).

    Returns (lambdas, converged). Start vectors are the row geometric means,
    which sit at the fixed point for consistent matrices.
    """
    logs = np.log(mats)
    v = np.exp(logs.mean(axis=2) - logs.mean(axis=2).max(axis=1, keepdims=True))
    v = v / v.sum(axis=1, keepdims=True)
    lam = np.full(mats.shape[0], np.inf)
    for _ in range(max_iter):
        u = np.einsum("sij,sj->si", mats, v)
        new_lam = u.sum(axis=1) / v.sum(axis=1)
        u = u / u.sum(axis=1, keepdims=True)
        done = np.abs(new_lam - lam) <= tol * np.abs(new_lam)
        lam, v = new_lam, u
        if done.all():
            return lam, True
    return lam, False


def principal_eigenvalue(
    matrix: PairwiseMatrix, tol: float = 1e-10, max_iter: int = 10_000
) -> float:
    """Dominant eigenvalue via power iteration (Perron-Frobenius guarantees
    a unique positive one). Equals n, within roundoff, for consistent matrices."""
    lam, converged = _power_iteration_batch(matrix.entries[None, :, :], tol, max_iter)
    if not converged:
        raise ConvergenceError(
            f"power iteration did not reach tol={tol} in {max_iter} iterations",
            last_value=float(lam[0]),
        )
    return float(lam[0])


def consistency_index(lambda_max: float, n: int) -> float:
    """CI = (lambda_max - n) / (n - 1)."""
    if n < 2:
        raise ValidationError(f"dimension must be >= 2, got {n}")
    if n == 2:
        return 0.0
    return (lambda_max - n) / (n - 1)


def _saaty_chunk(seed: int, n: int, chunk: int, size: int) -> np.ndarray:
    """Random reciprocal matrices for one fixed-size sample chunk."""
    rng = np.random.default_rng((seed, n, chunk))
    k = n * (n - 1) // 2
    idx = rng.integers(0, SAATY_VALUES.size, size=(MC_CHUNK, k))[:size]
    vals = SAATY_VALUES[idx]
    mats = np.ones((size, n, n))
    iu, ju = np.triu_indices(n, k=1)
    mats[:, iu, ju] = vals
    mats[:, ju, iu] = 1.0 / vals
    return mats


@functools.lru_cache(maxsize=64)
def random_index(n: int, samples: int = 100_000, seed: int = 0) -> float:
    """Mean CI of random reciprocal matrices with entries drawn uniformly from
    the 17-value judgment set. Deterministic given the seed; samples are
    generated in fixed-size chunks so the result is independent of how chunks
    are partitioned across workers.
    """
    if not 3 <= n <= 15:
        raise ValidationError(f"random index supported for 3 <= n <= 15, got {n}")
    if samples < 10_000:
        raise ValidationError("at least 10,000 samples required")
    total = 0.0
    for chunk in range(0, (samples + MC_CHUNK - 1) // MC_CHUNK):
        size = min(MC_CHUNK, samples - chunk * MC_CHUNK)
        mats = _saaty_chunk(seed, n, chunk, size)
        lam, converged = _power_iteration_batch(mats, tol=1e-10, max_iter=10_000)
        if not converged:
            raise ConvergenceError("power iteration failed on a random sample batch")
        total += float(np.sum((lam - n) / (n - 1)))
    return total / samples


def consistency_ratio(ci: float, ri: float) -> tuple[float, bool]:
    """CR = CI / RI with the 10% acceptance rule."""
    if ri <= 0:
        raise ValidationError("random index must be positive")
    cr = ci / ri
    return cr, cr < CR_ACCEPTANCE_THRESHOLD


def gci(matrix: PairwiseMatrix, w: PriorityVector | np.ndarray) -> float:
    """Geometric consistency index:
    2/((n-1)(n-2)) * sum_{i<j} log(a_ij / (w_i/w_j))^2.

    Zero iff the matrix is multiplicatively consistent with w as its priority
    vector. Invariant under rescaling of w.
    """
    n = matrix.n
    if n < 3:
        raise ValidationError(f"GCI requires dimension >= 3, got {n} (n=2 is always consistent)")
    weights = w.weights if isinstance(w, PriorityVector) else np.asarray(w, dtype=float)
    lw = np.log(weights)
    resid = np.log(matrix.entries) - lw[:, None] + lw[None, :]
    iu, ju = np.triu_indices(n, k=1)
    return float(2.0 / ((n - 1) * (n - 2)) * np.sum(resid[iu, ju] ** 2))


def alonso_lamata_accepted(lambda_max: float, n: int) -> bool:
    """Acceptance by the regression bound lambda_max < 1.17699 n - 0.43513."""
    return lambda_max < _AL_SLOPE * n - _AL_OFFSET


def is_multiplicatively_consistent(matrix: PairwiseMatrix, tol: float = 1e-9) -> bool:
    """True iff |log a_ik - log(a_ij a_jk)| <= tol for all triples (i, j, k)."""
    logs = np.log(matrix.entries)
    dev = logs[:, None, :] - logs[:, :, None] - logs[None, :, :]
    return bool(np.max(np.abs(dev)) <= tol)


@dataclass(frozen=True)
class ConsistencyReport:
    lambda_max: float
    ci: float
    ri: float
    cr: float
    gci: float
    cr_accepted: bool
    alonso_lamata_accepted: bool
    lambda_below_n: bool = False  # possible only without reciprocity


def consistency_report(
    matrix: PairwiseMatrix, ri_samples: int = 10_000, seed: int = 0
) -> ConsistencyReport:
    """All consistency diagnostics for one matrix.

    n = 2 matrices are always treated as consistent: CI, CR and GCI are 0.
    """
    n = matrix.n
    lam = principal_eigenvalue(matrix)
    if n == 2:
        return ConsistencyReport(
            lambda_max=lam, ci=0.0, ri=0.0, cr=0.0, gci=0.0,
            cr_accepted=True,
            alonso_lamata_accepted=alonso_lamata_accepted(lam, n),
            lambda_below_n=lam < n - 1e-8,
        )
    ci = consistency_index(lam, n)
    ri = random_index(n, samples=ri_samples, seed=seed)
    cr, cr_ok = consistency_ratio(ci, ri)
    g = gci(matrix, geometric_mean_priorities(matrix))
    return ConsistencyReport(
        lambda_max=lam, ci=ci, ri=ri, cr=cr, gci=g,
        cr_accepted=cr_ok,
        alonso_lamata_accepted=alonso_lamata_accepted(lam, n),
        lambda_below_n=lam < n - 1e-8,
    )

"""Empirical CDF fitting and mapping of raw measurements into [0, 1].

Two conventions are supported:

* ``standard``: F(x) = #{values <= x} / N. Right-continuous step function;
  maps the cohort maximum to exactly 1.
* ``hazen``: ties share their midrank, F at the r-th order statistic is
  (r - 0.5) / N, which keeps the extremes away from 0 and 1.

Cost-direction indicators use the complement 1 - F(x).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .hierarchy import COST

STANDARD = "standard"
HAZEN = "hazen"


@dataclass(frozen=True)
class FittedEcdf:
    """Immutable fitted ECDF over one indicator's cohort sample."""

    values: np.ndarray  # sorted distinct values
    counts_le: np.ndarray  # cumulative counts, aligned with values
    n: int
    convention: str
    tie_warning: bool  # distinct-value count < N/2: mapped values far from uniform

    def __post_init__(self):
        self.values.setflags(write=False)
        self.counts_le.setflags(write=False)

    def evaluate(self, x):
        """F(x); accepts scalars or arrays, clamps outside the observed range."""
        x = np.asarray(x, dtype=float)
        n_le = np.searchsorted(self.values, x, side="right")
        count_le = np.where(n_le > 0, self.counts_le[np.maximum(n_le - 1, 0)], 0)
        if self.convention == STANDARD:
            out = count_le / self.n
        else:
            n_lt = np.searchsorted(self.values, x, side="left")
            count_lt = np.where(n_lt > 0, self.counts_le[np.maximum(n_lt - 1, 0)], 0)
            out = (count_lt + 0.5 * (count_le - count_lt)) / self.n
        return float(out) if out.ndim == 0 else out

    __call__ = evaluate


def fit_ecdf(values, convention: str = STANDARD) -> FittedEcdf:
    """Fit an ECDF over a cohort sample. Rejects empty or non-finite samples."""
    if convention not in (STANDARD, HAZEN):
        raise ValidationError(f"unknown ECDF convention {convention!r}")
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise ValidationError("cannot fit an ECDF on an empty sample")
    if not np.all(np.isfinite(v)):
        raise ValidationError("sample contains non-finite values")
    distinct, counts = np.unique(v, return_counts=True)
    return FittedEcdf(
        values=distinct,
        counts_le=np.cumsum(counts),
        n=v.size,
        convention=convention,
        tie_warning=distinct.size < v.size / 2,
    )


def normalize_measurement(ecdf: FittedEcdf, x: float, direction: str) -> float:
    """Map a raw measurement into [0, 1]: F(x) for benefit, 1 - F(x) for cost."""
    f = ecdf.evaluate(x)
    return 1.0 - f if direction == COST else f


@dataclass(frozen=True)
class UniformityDiagnostic:
    mapped: np.ndarray
    mean: float
    degenerate: bool  # all sample points map to the same value


def uniformity_diagnostic(values) -> UniformityDiagnostic:
    """Mapped values {F(x_k)} of the sample through its own standard ECDF.

    For N distinct values this is exactly {1/N, ..., 1} with mean (N+1)/(2N);
    heavy ties pull the set away from uniformity.
    """
    v = np.asarray(values, dtype=float).ravel()
    if v.size < 2:
        raise ValidationError("uniformity diagnostic needs at least 2 values")
    ecdf = fit_ecdf(v, STANDARD)
    mapped = ecdf.evaluate(v)
    return UniformityDiagnostic(
        mapped=mapped,
        mean=float(mapped.mean()),
        degenerate=bool(np.all(mapped == mapped[0])),
    )

"""First-order propagation of judgment inconsistency into score variances.

The error model treats each judgment as the true weight ratio times a
log-normal perturbation. The per-matrix error variance is estimated by the
geometric consistency index; it then propagates through local weights, the
block weight matrix, per-expert global weights, the group geometric mean and
finally the weighted score sum. A seeded Monte-Carlo oracle reruns the whole
deterministic pipeline under explicit perturbations to validate the chain.

Criteria and sub-criteria errors are assumed independent; ECDF-normalized
measurement values are treated as exact constants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ecdf import STANDARD, fit_ecdf, normalize_measurement
from .errors import ValidationError
from .hierarchy import (
    ExpertJudgment,
    Hierarchy,
    assemble_weight_matrix,
    criteria_priorities,
    indicator_local_priorities,
)
from .matrices import MC_CHUNK, PairwiseMatrix, PriorityVector, gci


def matrix_error_variance(matrix: PairwiseMatrix, w: PriorityVector) -> float:
    """Estimated log-normal error variance of one judgment matrix.

    Identical to the geometric consistency index; zero iff the matrix is
    exactly consistent with w.
    """
    if matrix.n < 3:
        raise ValidationError("error variance needs dimension >= 3 (n=2 is always consistent)")
    return gci(matrix, w)


def weight_variances(w: np.ndarray, sigma2: float) -> np.ndarray:
    """Variance of each sum-normalized local weight:
    ((n^2 - 1)/n^2) * [sum_j w_j^2 - w_i^2] * sigma^2 * w_i^2."""
    w = np.asarray(w, dtype=float)
    n = w.size
    if n == 1:
        return np.zeros(1)
    pref = (n * n - 1.0) / (n * n)
    return pref * (np.sum(w**2) - w**2) * sigma2 * w**2


# The criteria-level and sub-criteria-level formulas are one and the same;
# at K = 4 the prefactor specializes to 15/16.
criteria_weight_variances = weight_variances
indicator_weight_variances = weight_variances


def expert_global_variance(
    v: np.ndarray, var_v: np.ndarray, w_matrix: np.ndarray, var_w_matrix: np.ndarray
) -> np.ndarray:
    """Variance of each global weight P_i = sum_j v_j W_ji under independent
    criteria and sub-criteria errors:
    sigma_Pi^2 = sum_j (var_vj * W_ji^2 + v_j^2 * var_Wji)."""
    v = np.asarray(v, dtype=float)
    var_v = np.asarray(var_v, dtype=float)
    if v.shape != var_v.shape or w_matrix.shape != var_w_matrix.shape:
        raise ValidationError("shape mismatch in global variance propagation")
    return var_v @ w_matrix**2 + v**2 @ var_w_matrix


def group_derivatives(p_group: np.ndarray, p_expert: np.ndarray, n_exp: int) -> np.ndarray:
    """Jacobian of the normalized geometric mean:
    dP_i / dP_j^(l) = P_i * (delta_ij - P_j) / (N_exp * P_j^(l))."""
    m = np.diag(p_group) - np.outer(p_group, p_group)
    return m / (n_exp * p_expert[None, :])


def group_variance(
    per_expert_p: list[np.ndarray], per_expert_var: list[np.ndarray], p_group: np.ndarray
) -> np.ndarray:
    """Propagate per-expert global-weight variances through the group mean."""
    n_exp = len(per_expert_p)
    if n_exp == 0 or n_exp != len(per_expert_var):
        raise ValidationError("need matching per-expert weights and variances")
    out = np.zeros_like(p_group)
    for p_l, var_l in zip(per_expert_p, per_expert_var):
        if np.any(np.asarray(p_l) <= 0):
            raise ValidationError("expert weight components must be positive")
        d = group_derivatives(p_group, np.asarray(p_l, dtype=float), n_exp)
        out += d**2 @ np.asarray(var_l, dtype=float)
    return out


def score_variance(var_p_group: np.ndarray, normalized: np.ndarray) -> float:
    """sigma_S^2 = sum_i var_Pi * F(x_i)^2 (measurements taken as exact)."""
    f = np.asarray(normalized, dtype=float)
    return float(np.asarray(var_p_group, dtype=float) @ f**2)


@dataclass(frozen=True)
class VarianceBundle:
    """All propagated variances for one expert's judgments."""

    sigma2_criteria: float
    sigma2_per_criterion: dict[str, float]
    var_v: np.ndarray
    var_w: dict[str, np.ndarray]
    var_w_matrix: np.ndarray  # K x N_ind, same block support as W
    var_p: np.ndarray


def _matrix_sigma2(matrix: PairwiseMatrix | None, w: PriorityVector) -> float:
    # 1x1 and 2x2 matrices are always consistent.
    if matrix is None or matrix.n < 3:
        return 0.0
    return matrix_error_variance(matrix, w)


def expert_variance_bundle(hierarchy: Hierarchy, judgment: ExpertJudgment) -> VarianceBundle:
    """Propagate one expert's inconsistencies down to global-weight variances."""
    v = criteria_priorities(judgment)
    sigma2_c = _matrix_sigma2(judgment.criteria_matrix, v)
    var_v = weight_variances(v.weights, sigma2_c)

    sigma2_per: dict[str, float] = {}
    var_w: dict[str, np.ndarray] = {}
    locals_: dict[str, PriorityVector] = {}
    for c in hierarchy.criteria:
        local = indicator_local_priorities(judgment, hierarchy, c.id)
        locals_[c.id] = local
        s2 = _matrix_sigma2(judgment.indicator_matrices.get(c.id), local)
        sigma2_per[c.id] = s2
        var_w[c.id] = weight_variances(local.weights, s2)

    w_matrix = assemble_weight_matrix(hierarchy, locals_)
    var_w_matrix = np.zeros_like(w_matrix)
    col = 0
    for row, c in enumerate(hierarchy.criteria):
        m_c = len(hierarchy.indicators[c.id])
        var_w_matrix[row, col : col + m_c] = var_w[c.id]
        col += m_c

    var_p = expert_global_variance(v.weights, var_v, w_matrix, var_w_matrix)
    return VarianceBundle(
        sigma2_criteria=sigma2_c,
        sigma2_per_criterion=sigma2_per,
        var_v=var_v,
        var_w=var_w,
        var_w_matrix=var_w_matrix,
        var_p=var_p,
    )


def _perturbed_local_weights(log_entries: np.ndarray, noise: np.ndarray) -> np.ndarray:
    """Sum-normalized row geometric means of exp(log A + noise), batched."""
    lm = (log_entries[None, :, :] + noise).mean(axis=2)
    w = np.exp(lm - lm.max(axis=1, keepdims=True))
    return w / w.sum(axis=1, keepdims=True)


def monte_carlo_pipeline_variance(
    hierarchy: Hierarchy,
    judgments: list[ExpertJudgment],
    measurements,
    noise_sigma: float,
    samples: int = 10_000,
    seed: int = 0,
    convention: str = STANDARD,
) -> np.ndarray:
    """Empirical per-project score variance under explicit judgment noise.

    Every off-diagonal judgment entry is multiplied by exp(N(0, noise_sigma^2))
    independently, the full deterministic pipeline is rerun per sample, and the
    empirical variance of each project's score is returned. Noise is generated
    in fixed-size chunks keyed by (seed, chunk), so the result is independent
    of how chunks are partitioned across workers.

    ``measurements`` needs ``values`` (projects x indicators, hierarchy order)
    and ``project_ids``.
    """
    if samples < 1_000:
        raise ValidationError("at least 1,000 Monte-Carlo samples required")
    values = np.asarray(measurements.values, dtype=float)
    n_projects = values.shape[0]
    if noise_sigma == 0.0:
        return np.zeros(n_projects)

    directions = hierarchy.directions()
    f = np.empty_like(values)
    for col in range(values.shape[1]):
        e = fit_ecdf(values[:, col], convention)
        for row in range(n_projects):
            f[row, col] = normalize_measurement(e, values[row, col], directions[col])

    k = hierarchy.k
    n_exp = len(judgments)
    # Pre-extract log-entries and off-diagonal masks per expert and matrix.
    mats = []
    for j in judgments:
        entry = [("criteria", np.log(j.criteria_matrix.entries))]
        for c in hierarchy.criteria:
            m = j.indicator_matrices.get(c.id)
            entry.append((c.id, None if m is None else np.log(m.entries)))
        mats.append(entry)
    spans = []
    col = 0
    for c in hierarchy.criteria:
        m_c = len(hierarchy.indicators[c.id])
        spans.append((c.id, col, col + m_c))
        col += m_c

    sum_s = np.zeros(n_projects)
    sum_s2 = np.zeros(n_projects)
    for chunk in range(0, (samples + MC_CHUNK - 1) // MC_CHUNK):
        size = min(MC_CHUNK, samples - chunk * MC_CHUNK)
        rng = np.random.default_rng((seed, chunk))
        log_pg = np.zeros((size, hierarchy.n_indicators))
        for entry in mats:
            p_l = np.zeros((size, hierarchy.n_indicators))
            _, log_c = entry[0]
            noise = rng.normal(0.0, noise_sigma, size=(size, k, k))
            noise[:, np.arange(k), np.arange(k)] = 0.0
            v_s = _perturbed_local_weights(log_c, noise)
            for idx, ((cid, log_a), (_, lo, hi)) in enumerate(zip(entry[1:], spans)):
                m_c = hi - lo
                if log_a is None:
                    w_s = np.ones((size, 1))
                else:
                    noise = rng.normal(0.0, noise_sigma, size=(size, m_c, m_c))
                    noise[:, np.arange(m_c), np.arange(m_c)] = 0.0
                    w_s = _perturbed_local_weights(log_a, noise)
                p_l[:, lo:hi] = v_s[:, idx : idx + 1] * w_s
            log_pg += np.log(p_l) / n_exp
        pg = np.exp(log_pg)
        pg /= pg.sum(axis=1, keepdims=True)
        scores = pg @ f.T  # (size, n_projects)
        sum_s += scores.sum(axis=0)
        sum_s2 += (scores**2).sum(axis=0)

    mean = sum_s / samples
    return np.maximum(sum_s2 / samples - mean**2, 0.0)

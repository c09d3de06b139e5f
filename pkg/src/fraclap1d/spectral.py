"""Extreme eigenvalues and 2-norm condition numbers of stiffness matrices."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceError, NotPositiveDefinite
from .mesh import mesh_stats

# below this lambda_min / lambda_max a double-precision study point is flagged
TRUNCATION_RATIO = 1e-13


@dataclass(frozen=True)
class SpectralSummary:
    lambda_min: float
    lambda_max: float
    cond: float
    N: int
    h_max: float
    h_min: float
    ratio: float
    s: float
    residual: float
    truncated: bool


def _inverse_iteration(factor, v, maxiter=500, rtol=1e-15):
    v = v / np.linalg.norm(v)
    mu = 0.0
    for _ in range(maxiter):
        z = scipy.linalg.cho_solve(factor, v)
        mu_new = float(v @ z)
        v = z / np.linalg.norm(z)
        if abs(mu_new - mu) <= rtol * abs(mu_new):
            return 1.0 / mu_new, v
        mu = mu_new
    raise ConvergenceError("inverse iteration for lambda_min did not converge")


def eigen_pairs(S, refine=True):
    """(lambda_min, v_min, lambda_max, v_max) of a symmetric matrix.

    lambda_min is refined by inverse iteration on the Cholesky factor when the
    matrix is positive definite; that keeps it accurate relative to itself for
    strongly graded matrices where the dense eigensolver only resolves it to
    about eps * lambda_max.
    """
    A = np.asarray(S, dtype=float)
    if A.shape[0] == 1:
        e = np.ones(1)
        return float(A[0, 0]), e, float(A[0, 0]), e
    try:
        w, V = scipy.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"symmetric eigensolver failed: {exc}") from exc
    lam_min, v_min = float(w[0]), V[:, 0]
    if refine:
        try:
            factor = scipy.linalg.cho_factor(A, lower=True)
        except np.linalg.LinAlgError:
            factor = None
        if factor is not None:
            lam_min, v_min = _inverse_iteration(factor, v_min)
    return lam_min, v_min, float(w[-1]), V[:, -1]


def eigen_extremes(S, refine=True):
    lam_min, _, lam_max, _ = eigen_pairs(S, refine)
    return lam_min, lam_max


def residual_norm(S, lam, v):
    """||S v - lam v||_2 for a unit vector v."""
    A = np.asarray(S, dtype=float)
    return float(np.linalg.norm(A @ v - lam * v))


def condition_number(S, refine=True):
    """lambda_max / lambda_min packaged with the mesh statistics of ``S``."""
    lam_min, v_min, lam_max, v_max = eigen_pairs(S, refine)
    if lam_min <= 0:
        raise NotPositiveDefinite(f"lambda_min = {lam_min:.3e} is not positive")
    res = max(residual_norm(S, lam_min, v_min), residual_norm(S, lam_max, v_max)) / lam_max
    stats = mesh_stats(S.mesh)
    return SpectralSummary(
        lambda_min=lam_min,
        lambda_max=lam_max,
        cond=lam_max / lam_min,
        N=S.mesh.N,
        h_max=stats.h_max,
        h_min=stats.h_min,
        ratio=stats.ratio,
        s=S.order.s,
        residual=res,
        truncated=lam_min < TRUNCATION_RATIO * lam_max,
    )

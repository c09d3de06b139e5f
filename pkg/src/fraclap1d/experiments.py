"""Convergence and conditioning studies on graded meshes of (-1, 1)."""

import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .assembly import as_order, assemble
from .errors import DegenerateFit, DomainError
from .mesh import build_beta_mapped, build_power_symmetric, build_uniform, mesh_stats
from .solver import max_error, solve_model_problem
from .spectral import condition_number

# literature samples of mu(s) at alpha = 2/s; compared against, never gated on
REFERENCE_MU = {0.1: 0.9505, 0.15: 0.9394, 0.2: 0.9032, 0.25: 0.8369,
                0.3: 0.7167, 0.35: 0.4868, 0.4: 0.0113, 0.45: 0.0144}

DOMAIN = (-1.0, 1.0)


class SlopeFit(NamedTuple):
    slope: float
    intercept: float
    residual: float


def fit_slope(xs, ys):
    """Least-squares line through (ln x, ln y); residual is the RMS log deviation."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size != y.size or x.size < 3:
        raise DegenerateFit("need at least 3 points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise DegenerateFit("log-log fit needs positive data")
    lx, ly = np.log(x), np.log(y)
    if np.ptp(lx) == 0:
        raise DegenerateFit("all abscissae are equal")
    A = np.column_stack((lx, np.ones_like(lx)))
    (slope, intercept), *_ = np.linalg.lstsq(A, ly, rcond=None)
    residual = math.sqrt(np.mean((A @ (slope, intercept) - ly) ** 2))
    return SlopeFit(float(slope), float(intercept), float(residual))


@dataclass
class StudyReport:
    kind: str
    params: dict
    columns: tuple
    rows: list
    fits: dict = field(default_factory=dict)
    truncated: list = field(default_factory=list)

    def column(self, name, include_truncated=True):
        i = self.columns.index(name)
        return [r[i] for r in self.rows if include_truncated or r[0] not in self.truncated]

    def to_csv(self):
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        return buf.getvalue()

    def summary(self):
        return {
            "kind": self.kind,
            "params": self.params,
            "fits": self.fits,
            "truncated_N": list(self.truncated),
            "truncated": bool(self.truncated),
        }

    def to_json(self):
        return json.dumps(self.summary(), indent=2, sort_keys=True)


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def study_mesh(N, alpha, mesh_kind="beta"):
    a, b = DOMAIN
    if alpha == 1:
        return build_uniform(a, b, N)
    if mesh_kind == "beta":
        return build_beta_mapped(a, b, N, alpha, alpha)
    if mesh_kind == "power-sym":
        return build_power_symmetric(a, b, N, alpha)
    raise DomainError(f"unknown study mesh kind {mesh_kind!r}")


def _fit_points(Ns, values):
    """Drop the smallest N (pre-asymptotic) as long as 3 points remain."""
    pairs = sorted(zip(Ns, values))
    if len(pairs) >= 4:
        pairs = pairs[1:]
    return [p[0] for p in pairs], [p[1] for p in pairs]


def _fit_entry(Ns, values, expected):
    xs, ys = _fit_points(Ns, values)
    fit = fit_slope(xs, ys)
    return {
        "slope": fit.slope,
        "intercept": fit.intercept,
        "residual": fit.residual,
        "expected": expected,
        "N_used": xs,
    }


def _check_ladder(N_list):
    Ns = [int(n) for n in N_list]
    if len(Ns) < 3:
        raise DomainError("a study needs at least 3 values of N")
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise DomainError("N_list must be strictly increasing")
    return Ns


def _map(fn, args, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, args))
    return [fn(a) for a in args]


def _convergence_cell(args):
    s, alpha, N, mesh_kind = args
    mesh = study_mesh(N, alpha, mesh_kind)
    _, _, sol = solve_model_problem(mesh, s)
    stats = mesh_stats(mesh)
    return (N, stats.h_max, stats.h_min, max_error(sol, s), sol.residual)


def convergence_study(s, alpha, N_list, f=None, mesh_kind="beta", workers=None):
    """Max-error rate of the FEM solution for f = 1 on (-1, 1).

    Only the constant source has a known exact solution, so ``f`` must be
    None or a function returning 1.
    """
    order = as_order(s)
    if f is not None and any(f(x) != 1.0 for x in (-0.9, 0.0, 0.7)):
        raise DomainError("the exact-solution comparison needs f = 1")
    Ns = _check_ladder(N_list)
    rows = _map(_convergence_cell, [(order.s, alpha, N, mesh_kind) for N in Ns], workers)
    report = StudyReport(
        kind="convergence",
        params={"s": order.s, "alpha": alpha, "beta": alpha, "domain": list(DOMAIN),
                "mesh": "uniform" if alpha == 1 else mesh_kind},
        columns=("N", "h_max", "h_min", "max_error", "residual"),
        rows=rows,
    )
    report.fits["max_error"] = _fit_entry(Ns, report.column("max_error"), -min(2.0, alpha * order.s))
    return report


def _conditioning_cell(args):
    s, alpha, N, mesh_kind = args
    S = assemble(study_mesh(N, alpha, mesh_kind), s)
    sp = condition_number(S)
    return (N, sp.h_max, sp.h_min, sp.ratio, sp.lambda_min, sp.lambda_max, sp.cond, sp.truncated)


def expected_cond_slope(s, alpha):
    return alpha * (2.0 * s - 1.0) + 1.0 if 0.5 <= s <= 1.0 else None


def conditioning_study(s, alpha, N_list, mesh_kind="beta", workers=None):
    """Condition number and lambda_min against N; truncated rows are kept but not fitted."""
    order = as_order(s)
    Ns = _check_ladder(N_list)
    rows = _map(_conditioning_cell, [(order.s, alpha, N, mesh_kind) for N in Ns], workers)
    report = StudyReport(
        kind="conditioning",
        params={"s": order.s, "alpha": alpha, "beta": alpha, "domain": list(DOMAIN),
                "mesh": "uniform" if alpha == 1 else mesh_kind},
        columns=("N", "h_max", "h_min", "ratio", "lambda_min", "lambda_max", "cond", "truncated"),
        rows=rows,
        truncated=[r[0] for r in rows if r[-1]],
    )
    kept = [r for r in rows if not r[-1]]
    if len(kept) >= 3:
        kN = [r[0] for r in kept]
        tested = 0.5 <= order.s <= 1.0
        report.fits["cond"] = _fit_entry(kN, [r[6] for r in kept], expected_cond_slope(order.s, alpha))
        report.fits["lambda_min"] = _fit_entry(kN, [r[4] for r in kept], -1.0 if tested else None)
        report.fits["ratio"] = _fit_entry(kN, [r[3] for r in kept], alpha - 1.0)
    return report


@dataclass(frozen=True)
class MuEstimate:
    s: float
    alpha: float
    exponent: float
    mu: float
    residual: float
    mu_caption_convention: float
    N_used: tuple
    truncated_N: tuple
    reference_mu: float = None

    def to_json(self):
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["N_used"] = list(self.N_used)
        d["truncated_N"] = list(self.truncated_N)
        d["mu_finite"] = math.isfinite(self.mu)
        for k, v in d.items():
            if isinstance(v, float) and not math.isfinite(v):
                d[k] = None
        return json.dumps(d, indent=2, sort_keys=True)


def implied_mu(exponent, s, alpha):
    """Solve exponent = 2s + mu (alpha - 1)(1 - 2s) for mu; nan where undefined."""
    denom = (alpha - 1.0) * (1.0 - 2.0 * s)
    if abs(denom) < 1e-12:
        return math.nan
    return (exponent - 2.0 * s) / denom


def mu_scan(s, alpha, N_list, mesh_kind="beta", workers=None):
    """Fit the total condition-number exponent for s < 1/2 and back out mu(s)."""
    order = as_order(s)
    if not 0.0 < order.s < 0.5:
        raise DomainError("mu(s) is defined for s in (0, 1/2)")
    if not alpha > 1.0:
        raise DomainError("mu(s) needs a graded mesh, alpha > 1")
    report = conditioning_study(order.s, alpha, N_list, mesh_kind, workers)
    fit = report.fits.get("cond")
    if fit is None:
        exponent, residual, used = math.nan, math.nan, ()
    else:
        exponent, residual, used = fit["slope"], fit["residual"], tuple(fit["N_used"])
    mu = implied_mu(exponent, order.s, alpha)
    ref = REFERENCE_MU.get(round(order.s, 4)) if math.isclose(alpha, 2.0 / order.s) else None
    return MuEstimate(order.s, alpha, exponent, mu, residual, -mu if math.isfinite(mu) else math.nan,
                      used, tuple(report.truncated), ref)

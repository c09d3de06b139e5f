"""Independent check of stiffness entries through the frequency-domain integral

    S_jk = (1/pi) int_0^inf xi^(2s-4) f_jk(xi) dxi,
    f_jk(xi) = sum_pq c_j[p] c_k[q] cos(d_pq xi),

where d_pq = |x_{j+p} - x_{k+q}| and c_l = (1/h_l, -1/h_l - 1/h_{l+1}, 1/h_{l+1}).

The integral is split in three pieces:

* [0, xi0]: termwise integration of the cosine Taylor series (the moments
  sum_pq c c d^(2n) are formed in 60-digit arithmetic from the spacings, so
  the cancellation behind the triple zero of f at the origin is resolved
  rather than assumed);
* [xi0, T]: Gauss-Legendre panels a quarter period of the fastest cosine
  wide, bisected until two rules agree;
* [T, inf): asymptotic expansion of each incomplete Fourier integral,
  obtained by repeated integration by parts.
"""

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .assembly import as_order
from .errors import ConvergenceError, DomainError, IndexOutOfRange
from .mesh import Mesh


@dataclass(frozen=True)
class QuadratureSpec:
    truncation: float = 60.0  # T = truncation / d_min; the asymptotic tail starts there
    tolerance: float = 1e-12  # absolute tolerance on the xi-integral
    rel_tolerance: float = 1e-11  # relative to the integral of |integrand|; double precision floor
    max_subdivisions: int = 12
    panel_order: int = 16
    series_reach: float = 8.0  # xi0 = series_reach / d_max

    def __post_init__(self):
        if not self.truncation > 0 or not self.tolerance > 0 or not self.rel_tolerance >= 0:
            raise DomainError("truncation and tolerance must be positive")


def _stencil_data(mesh, j, k):
    N = mesh.N
    for i in (j, k):
        if not 1 <= i <= N - 1:
            raise IndexOutOfRange(f"index {i} outside [1, {N - 1}]")
    h = mesh.spacings

    def c(l):
        return np.array([1.0 / h[l - 1], -1.0 / h[l - 1] - 1.0 / h[l], 1.0 / h[l]])

    W = np.outer(c(j), c(k))
    d = np.array([[mesh.distance(j + p, k + q) for q in (-1, 0, 1)] for p in (-1, 0, 1)])
    return W, d


def _stencil_mp(mesh, j, k):
    """The stencil of ``_stencil_data`` in 60-digit arithmetic, built from the spacings."""
    with mpmath.workdps(60):
        h = [mpmath.mpf(float(v)) for v in mesh.spacings]
        x = [mpmath.mpf(0)]
        for v in h:
            x.append(x[-1] + v)

        def c(l):
            a, b = 1 / h[l - 1], 1 / h[l]
            return (a, -a - b, b)

        W = [p * q for p in c(j) for q in c(k)]
        d = [abs(x[j + p] - x[k + q]) for p in (-1, 0, 1) for q in (-1, 0, 1)]
        return W, d


class _Integrand:
    """xi -> f_jk(xi), evaluated without cancellation at small xi."""

    def __init__(self, W, d, exact, series_terms=80):
        self.W = W.ravel()
        self.d = d.ravel()
        self.d_max = float(self.d.max())
        with mpmath.workdps(60):
            Wm, dm = exact
            scale = mpmath.mpf(self.d_max)
            # moments M_2n = sum W d^(2n), scaled by d_max^(2n); M_0 and M_2
            # vanish up to the 60-digit round-off
            self.moments = [
                mpmath.fsum(w * (x / scale) ** (2 * n) for w, x in zip(Wm, dm))
                for n in range(series_terms)
            ]

    def series(self, xi):
        with mpmath.workdps(60):
            t = mpmath.mpf(float(xi)) * self.d_max
            total = mpmath.mpf(0)
            term_pow = mpmath.mpf(1)
            for n, M in enumerate(self.moments):
                total += (-1) ** n * M * term_pow / mpmath.factorial(2 * n)
                term_pow *= t * t
            return float(total)

    def direct(self, xi):
        xi = np.asarray(xi, dtype=float)
        half = np.sin(0.5 * np.multiply.outer(xi, self.d)) ** 2
        # sum W cos = sum W (1 - 2 sin^2) and sum W vanishes exactly
        return -2.0 * (half @ self.W)

    def __call__(self, xi):
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        out = self.direct(xi)
        small = xi * self.d_max < 1.0
        for i in np.flatnonzero(small):
            out[i] = self.series(xi[i])
        return out


def fourier_integrand(mesh, s, j, k, xi):
    """xi^(2s-4) f_jk(xi) for scalar or array xi > 0."""
    order = as_order(s)
    W, d = _stencil_data(mesh, int(j), int(k))
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(xi_arr <= 0):
        raise DomainError("xi must be positive")
    values = _Integrand(W, d, _stencil_mp(mesh, int(j), int(k)))(xi_arr.ravel()).reshape(xi_arr.shape)
    out = xi_arr ** (2.0 * order.s - 4.0) * values
    return float(out) if np.ndim(xi) == 0 else out


def _series_part(integrand, nu, xi0):
    # int_0^xi0 xi^nu sum_n (-1)^n M_2n xi^2n/(2n)! ; n = 0, 1 vanish identically
    with mpmath.workdps(60):
        t = mpmath.mpf(xi0) * integrand.d_max
        base = mpmath.mpf(xi0) ** (nu + 1)
        total = mpmath.mpf(0)
        for n, M in enumerate(integrand.moments):
            if n < 2:
                continue
            total += (-1) ** n * M * t ** (2 * n) / (mpmath.factorial(2 * n) * (nu + 2 * n + 1))
        return float(total * base)


def _panel_part(integrand, nu, lo, hi, spec):
    width = 0.5 * math.pi / integrand.d_max
    n_panels = max(1, int(math.ceil((hi - lo) / width)))
    edges = np.linspace(lo, hi, n_panels + 1)
    panels = np.column_stack((edges[:-1], edges[1:]))
    xg, wg = np.polynomial.legendre.leggauss(spec.panel_order)
    xc, wc = np.polynomial.legendre.leggauss(spec.panel_order // 2 + 1)

    def rule(pan, x, w):
        mid = 0.5 * (pan[:, 0] + pan[:, 1])
        rad = 0.5 * (pan[:, 1] - pan[:, 0])
        pts = mid[:, None] + rad[:, None] * x[None, :]
        vals = pts**nu * integrand.direct(pts.ravel()).reshape(pts.shape)
        return rad * (vals @ w)

    total = 0.0
    budget = None
    span = hi - lo
    for _ in range(spec.max_subdivisions + 1):
        fine, coarse = rule(panels, xg, wg), rule(panels, xc, wc)
        if budget is None:
            scale = math.fsum(np.abs(fine))
            budget = max(spec.tolerance, spec.rel_tolerance * scale) / 2.0
        err = np.abs(fine - coarse)
        allowed = budget * (panels[:, 1] - panels[:, 0]) / span
        ok = err <= allowed
        total += math.fsum(fine[ok])
        if ok.all():
            return total
        bad = panels[~ok]
        mid = 0.5 * (bad[:, 0] + bad[:, 1])
        panels = np.concatenate((np.column_stack((bad[:, 0], mid)), np.column_stack((mid, bad[:, 1]))))
    raise ConvergenceError("panel quadrature did not reach tolerance within max_subdivisions")


def _budget(spec, value):
    return max(spec.tolerance, spec.rel_tolerance * abs(value)) / 2.0


def fourier_tail(nu, d, T, max_terms=60):
    """int_T^inf xi^nu cos(d xi) dxi for nu < -1, d >= 0, via integration by parts.

    Returns (value, error estimate).
    """
    if d == 0.0:
        return -(T ** (nu + 1)) / (nu + 1), 0.0
    # int_T^inf xi^nu e^{i d xi} = -e^{i d T} sum_k (-1)^k (nu)_k T^(nu-k) / (i d)^(k+1)
    phase = complex(math.cos(d * T), math.sin(d * T))
    coef = 1.0 + 0.0j
    total = 0.0j
    last = math.inf
    for kk in range(max_terms):
        term = coef * T ** (nu - kk) / (1j * d) ** (kk + 1)
        size = abs(term)
        if size > last:
            break
        total += term
        last = size
        if size < 1e-18 * abs(total):
            break
        coef *= -(nu - kk)
    return float((-phase * total).real), last


def stiffness_entry_quadrature(mesh, s, j, k, spec=QuadratureSpec()):
    """S_jk from the frequency-domain integral, independent of the closed form."""
    order = as_order(s)
    if not isinstance(mesh, Mesh):
        raise DomainError("mesh must be a Mesh")
    W, d = _stencil_data(mesh, int(j), int(k))
    integrand = _Integrand(W, d, _stencil_mp(mesh, int(j), int(k)))
    nu = 2.0 * order.s - 4.0
    d_pos = d[d > 0]
    xi0 = spec.series_reach / integrand.d_max
    T = max(2.0 * xi0, spec.truncation / float(d_pos.min()))

    head = _series_part(integrand, nu, xi0)
    body = _panel_part(integrand, nu, xi0, T, spec)
    tail_terms = [fourier_tail(nu, float(dd), T) for dd in d.ravel()]
    tail = math.fsum(w * v for w, (v, _) in zip(W.ravel(), tail_terms))
    tail_err = sum(abs(w) * e for w, (_, e) in zip(W.ravel(), tail_terms))
    if tail_err > _budget(spec, head + body):
        raise ConvergenceError(f"tail estimate {tail_err:.3g} exceeds tolerance; raise truncation")
    return (head + body + tail) / math.pi


def random_mesh(N, seed=0, a=0.0, b=1.0, spread=5.0):
    """Random partition of (a, b) with N elements and h_max / h_min <= spread."""
    rng = np.random.default_rng(seed)
    h = rng.uniform(1.0, spread, size=int(N))
    h *= (b - a) / h.sum()
    h[-1] = (b - a) - math.fsum(h[:-1])
    return Mesh(a, b, h)


def mass_matrix_reference(mesh):
    """Tridiagonal P1 mass matrix: diag (h_j + h_{j+1})/3, off-diagonal h/6."""
    h = mesh.spacings
    main = (h[:-1] + h[1:]) / 3.0
    off = h[1:-1] / 6.0
    return np.diag(main) + np.diag(off, 1) + np.diag(off, -1)


def laplacian_stiffness_reference(mesh):
    """Tridiagonal P1 stiffness matrix of -u'': diag 1/h_j + 1/h_{j+1}, off-diagonal -1/h."""
    inv = 1.0 / mesh.spacings
    main = inv[:-1] + inv[1:]
    off = -inv[1:-1]
    return np.diag(main) + np.diag(off, 1) + np.diag(off, -1)

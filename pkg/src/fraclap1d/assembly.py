"""Exact P1 stiffness matrix of the integral fractional Laplacian in 1D.

Every entry is the mixed fourth divided difference

    S_jk = dy^2 dx^2 dhat(x_j, x_k),
    dhat(x, y) = C_s |x - y|^(3 - 2s)            (s != 1/2)
    dhat(x, y) = (x - y)^2 ln|x - y| / (2 pi)     (s == 1/2)

with C_s = 1 / (2 Gamma(4 - 2s) cos(s pi)) and the second difference
``dx^2 g_j = (g_j - g_{j-1}) / h_j - (g_{j+1} - g_j) / h_{j+1}``.

A fourth difference of |x - y|^gamma over a stencil of width h at distance
D loses about (D/h)^4 to cancellation, which on graded meshes exceeds the
whole double-precision budget.  Entries are therefore evaluated in binary
floating point with a mesh-dependent number of bits (gmpy2) and rounded to
double once at the end.
"""

import math
from dataclasses import dataclass

import gmpy2
import numpy as np
import scipy.linalg

from .errors import BranchError, DomainError, IndexOutOfRange
from .mesh import Mesh, build_uniform
from .special import HALF_TOL, c_hat

mpfr = gmpy2.mpfr

# Toeplitz stencil weights w_{-2..2}
TOEPLITZ_WEIGHTS = (1, -4, 6, -4, 1)


@dataclass(frozen=True)
class FractionalOrder:
    s: float

    def __post_init__(self):
        s = float(self.s)
        object.__setattr__(self, "s", s)
        if not 0.0 < s < 1.5:
            raise DomainError(f"fractional order s={s!r} outside (0, 3/2)")

    @property
    def is_half(self):
        return abs(self.s - 0.5) <= HALF_TOL

    @property
    def exponent(self):
        """gamma = 3 - 2s, the power of |x - y| in dhat."""
        return 3.0 - 2.0 * self.s

    @property
    def tested_regime(self):
        return self.s <= 1.0


def as_order(s):
    return s if isinstance(s, FractionalOrder) else FractionalOrder(s)


@dataclass(frozen=True, eq=False)
class StiffnessMatrix:
    order: FractionalOrder
    mesh: Mesh
    entries: np.ndarray
    method: str = "generic"

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def size(self):
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def to_csv(self):
        return "".join(",".join(f"{v:.17g}" for v in row) + "\n" for row in self.entries)


def hat_distance(x, y, s):
    """The kernel dhat(x, y) whose mixed fourth difference gives S."""
    order = as_order(s)
    d = abs(float(x) - float(y))
    if d == 0.0:
        return 0.0
    if order.is_half:
        return d * d * math.log(d) / (2.0 * math.pi)
    return c_hat(order.s) * d**order.exponent


# -- working precision -------------------------------------------------------

def working_precision(mesh, s, guard=24):
    """Bits needed so that rounding the exact entries to double is the only error."""
    order = as_order(s)
    h_min = float(np.min(mesh.spacings))
    scale_bits = max(1.0, math.log2(mesh.length / h_min))
    bits = 53 + guard + 4.0 * scale_bits + math.log2(mesh.N + 1)
    if not order.is_half:
        # the difference sum is O(1 - 2s) and O(s) when the constant blows up / vanishes
        bits += max(0.0, -math.log2(abs(1.0 - 2.0 * order.s)))
        bits += max(0.0, -math.log2(order.s))
    return int(math.ceil(bits))


def _context(bits):
    return gmpy2.context(gmpy2.get_context(), precision=bits)


def _mp_c_hat(s):
    s_ = mpfr(s)
    half_gap = mpfr(0.5) - s_
    return 1 / (2 * gmpy2.gamma(4 - 2 * s_) * gmpy2.sin(gmpy2.const_pi() * half_gap))


def _mp_kernel(order):
    """Returns (f, scale) with dhat(d) = scale * f(d) evaluated at the active precision."""
    if order.is_half:
        def f(d):
            return d * d * gmpy2.log(d) if d else mpfr(0)
        return f, 1 / (2 * gmpy2.const_pi())
    gam = mpfr(3) - 2 * mpfr(order.s)

    def f(d):
        return d**gam if d else mpfr(0)
    return f, _mp_c_hat(order.s)


def _prefix(mesh):
    acc = mpfr(0)
    out = [acc]
    for h in mesh.spacings:
        acc = acc + mpfr(float(h))
        out.append(acc)
    return out


def _check_index(mesh, *idx):
    for i in idx:
        if not 1 <= int(i) <= mesh.N - 1:
            raise IndexOutOfRange(f"index {i} outside [1, {mesh.N - 1}]")


def _second_difference(g_prev, g, g_next, inv_h_left, inv_h_right):
    return (g - g_prev) * inv_h_left - (g_next - g) * inv_h_right


# -- single entries ----------------------------------------------------------

def stiffness_entry(mesh, s, j, k, bits=None):
    """S_jk as the nested second difference dy^2 dx^2 dhat over the 3x3 node block."""
    order = as_order(s)
    _check_index(mesh, j, k)
    j, k = int(j), int(k)
    with _context(bits or working_precision(mesh, order)):
        P = _prefix(mesh)
        f, scale = _mp_kernel(order)
        inv = [None] + [1 / mpfr(float(h)) for h in mesh.spacings]
        cols = []
        for q in (-1, 0, 1):
            y = P[k + q]
            g = [f(abs(P[j + p] - y)) for p in (-1, 0, 1)]
            cols.append(_second_difference(*g, inv[j], inv[j + 1]))
        value = _second_difference(*cols, inv[k], inv[k + 1]) * scale
        return float(value)


def stiffness_entry_matrix_form(mesh, s, j, k, bits=None):
    """S_jk = C * c_j D_j^k c_k^T with the explicit 3x3 distance-power matrix D."""
    order = as_order(s)
    _check_index(mesh, j, k)
    j, k = int(j), int(k)
    with _context(bits or working_precision(mesh, order)):
        P = _prefix(mesh)
        f, scale = _mp_kernel(order)

        def stencil(l):
            a, b = 1 / mpfr(float(mesh.spacings[l - 1])), 1 / mpfr(float(mesh.spacings[l]))
            return (a, -a - b, b)

        cj, ck = stencil(j), stencil(k)
        D = [[f(abs(P[j + p] - P[k + q])) for q in (-1, 0, 1)] for p in (-1, 0, 1)]
        row = [sum(cj[p] * D[p][q] for p in range(3)) for q in range(3)]
        value = sum(row[q] * ck[q] for q in range(3)) * scale
        return float(value)


# -- whole matrices ----------------------------------------------------------

def _generic(mesh, order, bits):
    N = mesh.N
    with _context(bits):
        P = _prefix(mesh)
        f, scale = _mp_kernel(order)
        T = np.empty((N + 1, N + 1), dtype=object)
        zero = mpfr(0)
        for i in range(N + 1):
            T[i, i] = zero
            Pi = P[i]
            for l in range(i + 1, N + 1):
                T[i, l] = T[l, i] = f(P[l] - Pi)
        inv = np.array([1 / mpfr(float(h)) for h in mesh.spacings], dtype=object)
        left, right = inv[:-1], inv[1:]
        # rows: dx^2 at j = 1..N-1 for every node column
        X = (T[1:N] - T[0:N - 1]) * left[:, None] - (T[2:] - T[1:N]) * right[:, None]
        S = (X[:, 1:N] - X[:, 0:N - 1]) * left[None, :] - (X[:, 2:] - X[:, 1:N]) * right[None, :]
        S = S * scale
        out = np.array([[float(v) for v in row] for row in S])
    upper = np.triu(out)
    return upper + np.triu(out, 1).T


def assemble(mesh, s, toeplitz=True, bits=None):
    """Dense symmetric stiffness matrix on the interior nodes x_1..x_{N-1}.

    Uniform meshes (spacings equal to 1e-14 relative) take the Toeplitz path
    unless ``toeplitz=False`` or s is on the logarithmic branch.
    """
    order = as_order(s)
    if toeplitz and not order.is_half and mesh.is_uniform():
        S = assemble_uniform_toeplitz(float(mesh.spacings[0]), mesh.N, order, a=mesh.a)
        return StiffnessMatrix(order, mesh, np.array(S.entries), method="toeplitz")
    bits = bits or working_precision(mesh, order)
    return StiffnessMatrix(order, mesh, _generic(mesh, order, bits), method="generic")


def toeplitz_symbol(N, s, bits=None):
    """sum_i w_i ||m| + i|^(3-2s) for m = 0..N-2 (unscaled first row)."""
    order = as_order(s)
    if order.is_half:
        raise BranchError("the Toeplitz form is not defined on the s = 1/2 branch")
    if bits is None:
        bits = 53 + 24 + int(4 * math.log2(N + 2)) + int(max(0.0, -math.log2(abs(1 - 2 * order.s))))
        bits += int(max(0.0, -math.log2(order.s)))
    with _context(bits):
        gam = mpfr(3) - 2 * mpfr(order.s)
        row = []
        for m in range(N - 1):
            acc = mpfr(0)
            for w, i in zip(TOEPLITZ_WEIGHTS, range(-2, 3)):
                r = abs(m + i)
                if r:
                    acc += w * mpfr(r) ** gam
            row.append(acc * _mp_c_hat(order.s))
        return [float(v) for v in row]


def assemble_uniform_toeplitz(h, N, s, a=0.0):
    """Stiffness matrix of the uniform mesh with spacing h and N elements."""
    order = as_order(s)
    if not h > 0:
        raise DomainError(f"spacing must be positive, got {h}")
    if int(N) != N or N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    N = int(N)
    row = np.array(toeplitz_symbol(N, order)) * h ** (1.0 - 2.0 * order.s)
    mesh = build_uniform(a, a + N * h, N)
    return StiffnessMatrix(order, mesh, scipy.linalg.toeplitz(row), method="toeplitz")

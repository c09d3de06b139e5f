"""Galerkin solve of (-Delta)^s u = f on (a, b) with u = 0 outside, P1 elements."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .assembly import as_order, assemble
from .errors import DomainError, FactorizationError
from .mesh import Mesh
from .special import gamma


@dataclass(frozen=True, eq=False)
class LoadVector:
    values: np.ndarray
    mesh: Mesh

    def __post_init__(self):
        if self.values.shape != (self.mesh.N - 1,):
            raise DomainError("load vector length must be N - 1")


@dataclass(frozen=True, eq=False)
class FemSolution:
    coefficients: np.ndarray
    mesh: Mesh
    order: object
    residual: float = 0.0

    def nodal_values(self):
        """Values at x_0..x_N, including the homogeneous boundary values."""
        return np.concatenate(([0.0], self.coefficients, [0.0]))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        nodes = self.mesh.nodes
        # np.interp holds the end values outside [a, b]; those are already 0
        return np.interp(x, nodes, self.nodal_values(), left=0.0, right=0.0)

    def energy(self, S):
        u = self.coefficients
        return float(u @ (np.asarray(S) @ u))


def assemble_load(mesh, f, quad_order=4):
    """b_j = int f phi_j, element by element with Gauss-Legendre of the given order."""
    if quad_order < 2:
        raise DomainError("quad_order must be >= 2")
    t, w = np.polynomial.legendre.leggauss(quad_order)
    t = 0.5 * (t + 1.0)  # reference points on [0, 1]
    w = 0.5 * w
    h = mesh.spacings
    left = mesh.nodes[:-1]
    pts = left[:, None] + h[:, None] * t[None, :]
    fv = np.asarray(np.vectorize(f, otypes=[float])(pts), dtype=float).reshape(pts.shape)
    # per element: contribution to the left node (1 - t) and to the right node (t)
    to_left = h * ((fv * (1.0 - t)) @ w)
    to_right = h * ((fv * t) @ w)
    values = to_right[:-1] + to_left[1:]
    return LoadVector(values, mesh)


def solve(S, b):
    """Cholesky solve of S u = b; the infinity-norm residual rides along."""
    A = np.asarray(S)
    if A.shape != (b.values.size, b.values.size):
        raise DomainError("matrix and load vector dimensions disagree")
    try:
        factor = scipy.linalg.cho_factor(A, lower=True, check_finite=True)
    except np.linalg.LinAlgError as exc:
        raise FactorizationError(f"Cholesky failed: {exc}") from exc
    u = scipy.linalg.cho_solve(factor, b.values)
    residual = float(np.max(np.abs(A @ u - b.values))) if u.size else 0.0
    return FemSolution(u, S.mesh, S.order, residual)


def exact_solution(s, x):
    """(1 - x^2)_+^s / Gamma(2s + 1), the solution for f = 1 on (-1, 1)."""
    order = as_order(s)
    x = np.asarray(x, dtype=float)
    base = np.maximum(1.0 - x * x, 0.0)
    out = base**order.s / gamma(2.0 * order.s + 1.0)
    return float(out) if out.ndim == 0 else out


def _exact_from_offsets(s, left, right):
    # 1 - x^2 = (1 + x)(1 - x) with both factors known without cancellation
    return np.maximum(left * right, 0.0) ** s / gamma(2.0 * s + 1.0)


def sample_points(mesh, samples_per_element=8):
    """Nodes plus equispaced interior points per element.

    Returns arrays (x, x - a, b - x, element index, local coordinate t); the
    offsets are summed from the spacings so points next to a graded endpoint
    keep their full relative accuracy.
    """
    if samples_per_element < 0:
        raise DomainError("samples_per_element must be >= 0")
    m = samples_per_element
    t = np.arange(0, m + 1) / (m + 1)  # t = 0 is the left node of each element
    h = mesh.spacings
    L, R = mesh.left_offsets(), mesh.right_offsets()
    elem = np.repeat(np.arange(mesh.N), m + 1)
    tt = np.tile(t, mesh.N)
    left = L[elem] + tt * h[elem]
    right = R[elem + 1] + (1.0 - tt) * h[elem]
    elem = np.append(elem, mesh.N - 1)
    tt = np.append(tt, 1.0)
    left = np.append(left, mesh.length)
    right = np.append(right, 0.0)
    x = np.where(left <= right, mesh.a + left, mesh.b - right)
    return x, left, right, elem, tt


def max_error(solution, s, samples_per_element=8):
    """max |u_h - u| over the nodes and the interior samples (domain (-1, 1))."""
    order = as_order(s)
    mesh = solution.mesh
    if abs(mesh.a + 1.0) > 0 or abs(mesh.b - 1.0) > 0:
        raise DomainError("the exact solution is known on (-1, 1) only")
    _, left, right, elem, tt = sample_points(mesh, samples_per_element)
    U = solution.nodal_values()
    uh = (1.0 - tt) * U[elem] + tt * U[elem + 1]
    u = _exact_from_offsets(order.s, left, right)
    return float(np.max(np.abs(uh - u)))


def solution_table(solution, s, samples_per_element=8):
    """Rows (x, u_h(x), u(x), |diff|) on the sampling grid."""
    order = as_order(s)
    mesh = solution.mesh
    x, left, right, elem, tt = sample_points(mesh, samples_per_element)
    U = solution.nodal_values()
    uh = (1.0 - tt) * U[elem] + tt * U[elem + 1]
    u = _exact_from_offsets(order.s, left, right)
    return np.column_stack((x, uh, u, np.abs(uh - u)))


def solve_model_problem(mesh, s, f=None, quad_order=4):
    """Assemble and solve; f defaults to the constant 1."""
    S = assemble(mesh, s)
    b = assemble_load(mesh, _one if f is None else f, quad_order)
    return S, b, solve(S, b)


def _one(x):
    return 1.0


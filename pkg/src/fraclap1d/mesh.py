"""Partitions a = x_0 < x_1 < ... < x_N = b of a bounded interval.

A :class:`Mesh` is defined by its endpoints and its element spacings.  The
spacings are the authoritative data: strongly graded meshes have elements
far below the double-precision resolution of the node coordinates near the
endpoints (h_1 ~ N^-alpha with alpha up to 10), and all downstream
assembly works from exact sums of spacings.  Nodes are derived from the
spacings by summing from the nearer endpoint.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special import beta as beta_fn
from .special import incomplete_beta


@dataclass(frozen=True, eq=False)
class Mesh:
    a: float
    b: float
    spacings: np.ndarray

    def __post_init__(self):
        h = np.array(self.spacings, dtype=float)
        h.setflags(write=False)
        object.__setattr__(self, "spacings", h)
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not self.a < self.b:
            raise DomainError(f"need a < b, got a={self.a}, b={self.b}")
        if h.ndim != 1 or h.size < 2:
            raise DomainError("a mesh needs at least N = 2 elements")
        if not np.all(np.isfinite(h)) or np.any(h <= 0):
            raise DomainError("mesh spacings must be positive and finite")
        length = self.b - self.a
        if abs(math.fsum(h) - length) > 1e-12 * length:
            raise DomainError("spacings do not sum to b - a")

    @classmethod
    def from_nodes(cls, nodes):
        x = np.asarray(nodes, dtype=float)
        if x.ndim != 1 or x.size < 3:
            raise DomainError("need at least 3 nodes")
        h = np.diff(x)
        if np.any(h <= 0):
            raise DomainError("nodes must be strictly increasing")
        return cls(x[0], x[-1], h)

    @property
    def N(self):
        return self.spacings.size

    @property
    def length(self):
        return self.b - self.a

    def left_offsets(self):
        """x_j - a for j = 0..N, by forward summation."""
        return np.concatenate(([0.0], np.cumsum(self.spacings)))

    def right_offsets(self):
        """b - x_j for j = 0..N, by backward summation."""
        return np.concatenate((np.cumsum(self.spacings[::-1])[::-1], [0.0]))

    @property
    def nodes(self):
        left, right = self.left_offsets(), self.right_offsets()
        x = np.where(left <= right, self.a + left, self.b - right)
        x[0], x[-1] = self.a, self.b
        return x

    def boundary_distance(self):
        """min(x_j - a, b - x_j) for every node, without cancellation."""
        return np.minimum(self.left_offsets(), self.right_offsets())

    def distance(self, i, l):
        """|x_i - x_l| as a correctly summed run of spacings."""
        i, l = sorted((int(i), int(l)))
        return math.fsum(self.spacings[i:l])

    def is_uniform(self, rtol=1e-14):
        h = self.spacings
        return bool(np.max(np.abs(h - h[0])) <= rtol * h[0])

    def stats(self):
        return mesh_stats(self)

    def to_text(self):
        return "".join(f"{x:.17g}\n" for x in self.nodes)

    @classmethod
    def from_text(cls, text):
        values = [float(line) for line in text.split() if line.strip()]
        return cls.from_nodes(values)


@dataclass(frozen=True)
class MeshStats:
    h_max: float
    h_min: float
    ratio: float


def mesh_stats(mesh):
    h = mesh.spacings
    h_max, h_min = float(h.max()), float(h.min())
    return MeshStats(h_max, h_min, h_max / h_min)


def _check_common(a, b, N):
    if not a < b:
        raise DomainError(f"need a < b, got a={a}, b={b}")
    if int(N) != N or N < 2:
        raise DomainError(f"need an integer N >= 2, got {N}")
    return int(N)


def _check_exponent(name, value):
    if not value >= 1.0:
        raise DomainError(f"{name} must be >= 1, got {value}")


def build_uniform(a, b, N):
    N = _check_common(a, b, N)
    return Mesh(a, b, np.full(N, (b - a) / N))


def build_power_left(a, b, N, alpha):
    """x_j = a + (b - a) (j/N)^alpha: clustering at the left endpoint."""
    N = _check_common(a, b, N)
    _check_exponent("alpha", alpha)
    y = np.arange(N + 1) / N
    offsets = (b - a) * y**alpha
    return Mesh(a, b, np.diff(offsets))


def build_power_symmetric(a, b, N, alpha):
    """Two-sided power grading mirrored about the midpoint; N must be even."""
    N = _check_common(a, b, N)
    _check_exponent("alpha", alpha)
    if N % 2 or N < 4:
        raise DomainError(f"symmetric power grading needs an even N >= 4, got {N}")
    half = N // 2
    t = np.arange(half + 1) / half
    left = 0.5 * (b - a) * t**alpha
    h_left = np.diff(left)
    return Mesh(a, b, np.concatenate((h_left, h_left[::-1])))


def build_beta_mapped(a, b, N, alpha, beta):
    """Nodes x_j = a + (b - a) B(j/N; alpha, beta) / B(alpha, beta)."""
    N = _check_common(a, b, N)
    _check_exponent("alpha", alpha)
    _check_exponent("beta", beta)
    total = beta_fn(alpha, beta)
    # mapped fraction measured from the left (F) and from the right (G = 1 - F),
    # each evaluated directly so neither end suffers cancellation
    F = np.array([incomplete_beta(j / N, alpha, beta) for j in range(N + 1)]) / total
    G = np.array([incomplete_beta((N - j) / N, beta, alpha) for j in range(N + 1)]) / total
    y = np.arange(N + 1) / N
    h = np.empty(N)
    for j in range(1, N + 1):
        if y[j] <= 0.5:
            h[j - 1] = F[j] - F[j - 1]
        elif y[j - 1] >= 0.5:
            h[j - 1] = G[j - 1] - G[j]
        else:
            h[j - 1] = 1.0 - F[j - 1] - G[j]
    h *= b - a
    # absorb the O(eps) mismatch of the two halves into the largest element
    h[np.argmax(h)] += (b - a) - math.fsum(h)
    return Mesh(a, b, h)


def build_mesh(kind, a, b, N, alpha=1.0, beta=None):
    """Dispatch on the CLI mesh-kind names."""
    if kind == "uniform":
        return build_uniform(a, b, N)
    if kind == "power-left":
        return build_power_left(a, b, N, alpha)
    if kind == "power-sym":
        return build_power_symmetric(a, b, N, alpha)
    if kind == "beta":
        return build_beta_mapped(a, b, N, alpha, alpha if beta is None else beta)
    raise DomainError(f"unknown mesh kind {kind!r}")

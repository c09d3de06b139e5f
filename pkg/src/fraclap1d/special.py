"""Gamma, Beta and incomplete Beta evaluations in double precision."""

import math

from .errors import BranchError, ConvergenceError, DomainError, PoleError

HALF_TOL = 1e-6


def gamma(x):
    """Gamma function for real ``x`` away from the poles 0, -1, -2, ..."""
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at {x!r}")
    return math.gamma(x)


def cos_pi(s):
    """cos(pi*s), accurate near s = 1/2 (and 3/2) where it vanishes."""
    s = float(s)
    # 0.5 - s is exact for s in [0.25, 1]; sin keeps full relative accuracy
    if 0.0 <= s <= 1.0:
        return math.sin(math.pi * (0.5 - s))
    return math.cos(math.pi * s)


def c_hat(s):
    """Leading constant 1 / (2 Gamma(4 - 2s) cos(s pi)) of the kernel |x - y|^(3 - 2s).

    ``s = 0`` is accepted as the limit value 1/12.
    """
    s = float(s)
    if not 0.0 <= s < 1.5:
        raise DomainError(f"s={s!r} outside [0, 3/2)")
    if abs(s - 0.5) <= HALF_TOL:
        raise BranchError(f"s={s!r} is within {HALF_TOL} of 1/2; use the logarithmic form")
    return 1.0 / (2.0 * gamma(4.0 - 2.0 * s) * cos_pi(s))


def beta(alpha, beta):
    alpha, beta_ = float(alpha), float(beta)
    if alpha <= 0 or beta_ <= 0:
        raise DomainError(f"beta needs positive arguments, got ({alpha}, {beta_})")
    if alpha + beta_ < 170.0:
        return math.gamma(alpha) * math.gamma(beta_) / math.gamma(alpha + beta_)
    return math.exp(math.lgamma(alpha) + math.lgamma(beta_) - math.lgamma(alpha + beta_))


def _beta_cf(a, b, x, maxiter=1000, eps=1e-16):
    # modified Lentz evaluation of the continued fraction for I_x(a, b)
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = tiny if abs(d) < tiny else d
    d = 1.0 / d
    h = d
    for m in range(1, maxiter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise ConvergenceError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def incomplete_beta(y, alpha, beta_):
    """Non-regularized incomplete Beta integral B(y; alpha, beta) = int_0^y t^(alpha-1) (1-t)^(beta-1) dt.

    Restricted to alpha, beta >= 1 (the grading exponents of the mesh map).
    """
    y, a, b = float(y), float(alpha), float(beta_)
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"y={y!r} outside [0, 1]")
    if a < 1.0 or b < 1.0:
        raise DomainError(f"alpha, beta must be >= 1, got ({a}, {b})")
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return beta(a, b)
    if y > (a + 1.0) / (a + b + 2.0):
        return beta(a, b) - incomplete_beta(1.0 - y, b, a)
    front = math.exp(a * math.log(y) + b * math.log1p(-y)) / a
    return front * _beta_cf(a, b, y)

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclap1d.errors import BranchError, DomainError, PoleError
from fraclap1d.special import beta, c_hat, gamma, incomplete_beta


@pytest.mark.parametrize("x, expected", [(0.5, math.sqrt(math.pi)), (3, 2.0), (6, 120.0)])
def test_gamma_known_values(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("x", [0, -1, -7])
def test_gamma_poles(x):
    with pytest.raises(PoleError):
        gamma(x)


def test_gamma_accuracy_against_mpmath():
    for x in np.linspace(0.5, 20, 57):
        assert gamma(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-13)


def test_gamma_recurrence():
    for x in np.linspace(0.5, 10, 100):
        assert gamma(x + 1) == pytest.approx(x * gamma(x), rel=1e-12)


def test_c_hat_limits():
    assert c_hat(0.0) == pytest.approx(1 / 12, rel=1e-15)
    assert c_hat(1.0) == pytest.approx(-0.5, rel=1e-15)


def test_c_hat_three_quarters():
    # 1 / (2 Gamma(2.5) cos(0.75 pi)) at 40 digits
    with mpmath.workdps(40):
        ref = 1 / (2 * mpmath.gamma(mpmath.mpf(2.5)) * mpmath.cos(mpmath.mpf(0.75) * mpmath.pi))
    assert float(ref) == pytest.approx(-0.53192304053524357, rel=1e-15)
    assert c_hat(0.75) == pytest.approx(float(ref), rel=1e-14)


@pytest.mark.parametrize("s", [0.6, 0.75, 1.0, 1.25, 1.49])
def test_c_hat_negative_above_half(s):
    assert c_hat(s) < 0


def test_c_hat_near_half_is_accurate():
    s = 0.5 + 1e-5
    with mpmath.workdps(40):
        ref = 1 / (2 * mpmath.gamma(4 - 2 * mpmath.mpf(s)) * mpmath.cos(mpmath.mpf(s) * mpmath.pi))
    assert c_hat(s) == pytest.approx(float(ref), rel=1e-12)


def test_c_hat_branch_error():
    with pytest.raises(BranchError):
        c_hat(0.5)
    with pytest.raises(BranchError):
        c_hat(0.5 + 5e-7)


def test_c_hat_domain():
    with pytest.raises(DomainError):
        c_hat(1.5)


@pytest.mark.parametrize("a, b, expected", [(1, 1, 1.0), (2, 2, 1 / 6), (2.5, 1, 0.4)])
def test_beta(a, b, expected):
    assert beta(a, b) == pytest.approx(expected, rel=1e-14)


def test_beta_domain():
    with pytest.raises(DomainError):
        beta(0, 1)


@pytest.mark.parametrize("y", [0.0, 0.2, 0.7, 1.0])
def test_incomplete_beta_unit_exponents(y):
    assert incomplete_beta(y, 1, 1) == pytest.approx(y, abs=1e-15)


def test_incomplete_beta_half():
    assert incomplete_beta(0.5, 2, 2) == pytest.approx(1 / 12, rel=1e-14)


@pytest.mark.parametrize("a, b", [(1, 1), (2, 3), (8, 8), (10, 1.5)])
def test_incomplete_beta_complete(a, b):
    assert incomplete_beta(1.0, a, b) == pytest.approx(beta(a, b), rel=1e-14)


# reference values from mpmath.betainc at 40 digits
@pytest.mark.parametrize(
    "y, a, b, expected",
    [
        (0.3, 2.5, 4.0, 0.009757855193953723674504866232308864660574),
        (0.01, 10, 10, 9.211180944494917221345768507327606507855e-22),
        (0.9, 3, 1.5, 0.1337385726510073694350995990561235345591),
        (1 / 512, 10, 10, 7.949769907554394420249082139544903767471e-29),
    ],
)
def test_incomplete_beta_reference(y, a, b, expected):
    assert incomplete_beta(y, a, b) == pytest.approx(expected, rel=1e-12)


def test_incomplete_beta_domain():
    with pytest.raises(DomainError):
        incomplete_beta(1.2, 2, 2)
    with pytest.raises(DomainError):
        incomplete_beta(0.5, 0.5, 2)


exponents = st.floats(min_value=1.0, max_value=20.0)
unit = st.floats(min_value=0.0, max_value=1.0)


@settings(max_examples=200, deadline=None)
@given(unit, exponents, exponents)
def test_incomplete_beta_reflection(y, a, b):
    total = incomplete_beta(y, a, b) + incomplete_beta(1.0 - y, b, a)
    assert total == pytest.approx(beta(a, b), rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.001, 0.999), st.floats(0.0005, 0.05), exponents, exponents)
def test_incomplete_beta_strictly_increasing(y, dy, a, b):
    hi = min(y + dy, 1.0)
    lo, up = incomplete_beta(y, a, b), incomplete_beta(hi, a, b)
    # strict whenever the integrand over [y, hi] is representable
    assert up >= lo
    if lo > 0 and up - lo > 1e-14 * up:
        assert up > lo


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 0.999), exponents, exponents)
def test_incomplete_beta_matches_mpmath(y, a, b):
    ref = float(mpmath.betainc(a, b, 0, y))
    assert incomplete_beta(y, a, b) == pytest.approx(ref, rel=1e-12)

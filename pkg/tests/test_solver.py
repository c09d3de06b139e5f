import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclap1d.assembly import assemble
from fraclap1d.errors import DomainError, FactorizationError
from fraclap1d.experiments import study_mesh
from fraclap1d.mesh import build_beta_mapped, build_uniform
from fraclap1d.oracle import random_mesh
from fraclap1d.solver import (
    FemSolution,
    LoadVector,
    assemble_load,
    exact_solution,
    max_error,
    solve,
    solve_model_problem,
)
from fraclap1d.spectral import condition_number


def test_load_constant_is_hat_area():
    mesh = random_mesh(7, seed=1)
    h = mesh.spacings
    b = assemble_load(mesh, lambda x: 1.0)
    np.testing.assert_allclose(b.values, 0.5 * (h[:-1] + h[1:]), rtol=1e-14)


def test_load_examples():
    assert np.all(assemble_load(build_uniform(0, 1, 5), lambda x: 0.0).values == 0)
    assert assemble_load(build_uniform(0, 1, 2), lambda x: x).values[0] == pytest.approx(0.25, rel=1e-14)


def test_load_rejects_low_order():
    with pytest.raises(DomainError):
        assemble_load(build_uniform(0, 1, 2), lambda x: x, quad_order=1)


def test_load_vector_length():
    with pytest.raises(DomainError):
        LoadVector(np.zeros(3), build_uniform(0, 1, 3))


@pytest.mark.parametrize("x, s, expected", [(1.0, 0.5, 0.0), (-1.0, 0.3, 0.0), (0.0, 0.5, 1.0),
                                            (0.6, 1.0, 0.32), (2.0, 0.7, 0.0)])
def test_exact_solution_examples(x, s, expected):
    assert exact_solution(s, x) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("N", [4, 16, 64])
def test_s1_is_nodally_exact(N):
    mesh = build_uniform(-1, 1, N)
    _, _, sol = solve_model_problem(mesh, 1.0)
    x = mesh.nodes[1:-1]
    np.testing.assert_allclose(sol.coefficients, (1 - x * x) / 2, atol=1e-12)
    assert max_error(sol, 1.0, samples_per_element=0) <= 1e-12
    # interior samples expose the O(h^2) interpolation gap h^2 / 8 * |u''| = h^2 / 8
    gap = max_error(sol, 1.0, samples_per_element=1)
    assert gap == pytest.approx((2 / N) ** 2 / 8, rel=1e-9)


def test_zero_load_gives_zero():
    S = assemble(random_mesh(6, seed=3), 0.6)
    sol = solve(S, LoadVector(np.zeros(5), S.mesh))
    assert np.all(sol.coefficients == 0)


def test_solution_evaluation():
    mesh = build_uniform(-1, 1, 4)
    sol = FemSolution(np.array([1.0, 2.0, 3.0]), mesh, 0.5)
    np.testing.assert_array_equal(sol(mesh.nodes), [0, 1, 2, 3, 0])
    assert sol(0.25) == pytest.approx(2.5)
    assert sol(-3.0) == 0.0 and sol(1.5) == 0.0


def test_exact_coefficients_give_zero_nodal_error():
    mesh = build_beta_mapped(-1, 1, 32, 4, 4)
    # (1 - x^2)^(1/2) / Gamma(2) from the boundary offsets, as max_error evaluates it
    left, right = mesh.left_offsets()[1:-1], mesh.right_offsets()[1:-1]
    sol = FemSolution(np.sqrt(left * right), mesh, 0.5)
    assert max_error(sol, 0.5, samples_per_element=0) == 0.0
    np.testing.assert_allclose(sol.coefficients, exact_solution(0.5, mesh.nodes[1:-1]), rtol=1e-12)


def test_max_error_needs_reference_domain():
    _, _, sol = solve_model_problem(build_uniform(0, 1, 4), 1.0)
    with pytest.raises(DomainError):
        max_error(sol, 1.0)


def test_factorization_failure():
    S = assemble(build_uniform(0, 1, 3), 0.75)
    bad = type(S)(S.order, S.mesh, -np.asarray(S.entries).copy())
    with pytest.raises(FactorizationError):
        solve(bad, LoadVector(np.ones(2), S.mesh))


@pytest.mark.parametrize("s, alpha", [(0.3, 1.0), (0.5, 4.0), (0.75, 8 / 3), (1.0, 2.0)])
def test_symmetry_residual_energy(s, alpha):
    mesh = study_mesh(64, alpha)
    S, b, sol = solve_model_problem(mesh, s)
    u = sol.coefficients
    np.testing.assert_allclose(u, u[::-1], rtol=1e-10)
    assert sol.energy(S) > 0
    cond = condition_number(S).cond
    assert sol.residual <= 1e-10 * np.max(np.abs(b.values)) * math.sqrt(cond)


def test_graded_s075_error_below_n_minus_2_curve():
    # rate -2 from the convergence study, so N = 256 sits at a quarter of N = 128
    errs = [max_error(solve_model_problem(study_mesh(N, 8 / 3), 0.75)[2], 0.75) for N in (64, 128, 256)]
    ratios = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
    assert all(1.6 <= r <= 2.4 for r in ratios)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 1000), st.integers(3, 20), st.floats(0.05, 1.0))
def test_energy_positive_on_random_meshes(seed, N, s):
    mesh = random_mesh(N, seed=seed, a=-1, b=1)
    S, _, sol = solve_model_problem(mesh, s)
    assert sol.energy(S) > 0

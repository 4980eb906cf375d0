import numpy as np
import pytest

from cwfcauchy import (
    NONE, SIN2, MinimizerConfig, NoiseSpec, apply_noise, extract_flux, gradient_J, initial_guess,
    make_context, make_grid, minimize, paper_problem, solve_forward,
)
from cwfcauchy.model import zero_problem
from cwfcauchy.oracle import dense_minimizer, exact_objective, fd_gradient, hessian


def test_fd_quadratic_case(small_grid, rng):
    ctx = make_context(small_grid, paper_problem(0.0, NONE), 4.0, 0.00063)
    u = rng.uniform(-1, 1, small_grid.shape)
    fd = fd_gradient(ctx, u, eps=1e-5).values
    g = gradient_J(ctx, u).values
    assert np.max(np.abs(fd - g)) <= 1e-8 * np.max(np.abs(g))


def test_fd_zero(small_grid):
    ctx = make_context(small_grid, zero_problem(), 4.0, 0.00063)
    assert np.all(fd_gradient(ctx, np.zeros(small_grid.shape)).values == 0.0)


def test_fd_sin2(small_grid, rng):
    ctx = make_context(small_grid, paper_problem(10.0, SIN2), 4.0, 0.00063)
    u = rng.uniform(-1, 1, small_grid.shape)
    fd, g = fd_gradient(ctx, u).values[ctx.free], gradient_J(ctx, u).values[ctx.free]
    assert np.max(np.abs(fd - g) / np.maximum(np.abs(fd), np.abs(g))) <= 1e-6


def test_fd_rejects_eps(small_grid):
    ctx = make_context(small_grid, zero_problem(), 0.0, 0.1)
    with pytest.raises(ValueError):
        fd_gradient(ctx, np.zeros(small_grid.shape), eps=0.0)


@pytest.fixture
def quad_setup(small_grid):
    pr = paper_problem(0.0, NONE)
    truth = solve_forward(pr, small_grid)
    rows = apply_noise(extract_flux(truth), NoiseSpec(0.05, 1), small_grid.h)
    ctx = make_context(small_grid, pr, 4.0, 0.00063)
    return ctx, initial_guess(ctx, rows)


def test_dense_minimizer_stationary(quad_setup):
    ctx, start = quad_setup
    umin = dense_minimizer(ctx, start)
    _, b = hessian(ctx, start)
    gn = np.linalg.norm(gradient_J(ctx, umin).values)
    assert gn <= 1e-9 * (1 + np.linalg.norm(b))
    assert np.array_equal(umin.values[ctx.constraint_mask], start.values[ctx.constraint_mask])


def test_dense_minimizer_regularizer_dominated(small_grid):
    ctx = make_context(small_grid, zero_problem(), 4.0, 1e3)
    umin = dense_minimizer(ctx, initial_guess(ctx, (np.zeros(16), np.zeros(16))))
    assert np.linalg.norm(umin.values) <= 1e-6


def test_dense_minimizer_is_gd_fixed_point(quad_setup):
    ctx, start = quad_setup
    umin = dense_minimizer(ctx, start)
    rep = minimize(ctx, umin, MinimizerConfig(step=1e-8, iterations=50, record_every=50))
    np.testing.assert_allclose(rep.final.values, umin.values, rtol=0, atol=1e-12)


def test_dense_minimizer_rejects_nonlinear(small_grid):
    ctx = make_context(small_grid, paper_problem(10.0, SIN2), 4.0, 0.00063)
    with pytest.raises(ValueError):
        dense_minimizer(ctx, np.zeros(small_grid.shape))


def test_hessian_symmetric(quad_setup):
    ctx, start = quad_setup
    H, _ = hessian(ctx, start)
    assert np.max(np.abs(H - H.T)) <= 1e-10 * np.max(np.abs(H))


def test_hessian_positive_definite_bound():
    g = make_grid(6, 8, 0.5)
    beta = 0.00063
    ctx = make_context(g, paper_problem(0.0, NONE), 4.0, beta)
    H, _ = hessian(ctx, np.zeros(g.shape))
    lo = np.linalg.eigvalsh(0.5 * (H + H.T))[0]
    assert lo >= beta * 2 / (g.nx * g.nt) * (1 - 1e-10)


def test_exact_objective_matches(small_grid, rng):
    ctx = make_context(small_grid, paper_problem(10.0, SIN2), 3.0, 0.1)
    u = rng.normal(size=small_grid.shape)
    assert exact_objective(ctx, u) == pytest.approx(ctx.value(u), rel=1e-13)

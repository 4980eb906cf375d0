"""Brute-force references for tests: finite-difference gradients, exact
minimizers of the quadratic (``a = 0``) functional, refined forward solves.

Nothing here is used on the production path. The objective is re-derived
from its defining sums rather than borrowed from the kernels, and summed with
``math.fsum`` so that terms untouched by a coordinate perturbation cancel
exactly in a central difference.
"""
from __future__ import annotations

import math

import numpy as np
import scipy.linalg

from .forward import solve_forward
from .functional import FunctionalContext
from .grid import Field, make_grid
from .model import ProblemSpec


def objective_terms(ctx: FunctionalContext, u: np.ndarray) -> np.ndarray:
    """Every summand of the objective (already divided by ``N*M``), flattened."""
    N, M = u.shape
    h, tau = ctx.grid.h, ctx.grid.tau
    w = ctx.weight.table
    terms = []
    for i in range(1, N - 1):
        row = u[i]
        s = ctx.s_kind.s(row[:-1])
        k = ((row[1:] - row[:-1]) / tau
             - (u[i - 1, :-1] - 2 * row[:-1] + u[i + 1, :-1]) / h**2
             - ctx.a * s - ctx.source_table[i, :-1])
        terms.append(w[i, :-1] * k**2)
        c = row[1:-1]
        terms.append(ctx.beta * c**2)
        terms.append(ctx.beta * ((row[2:] - c) / tau) ** 2)
        terms.append(ctx.beta * ((u[i + 1, 1:-1] - c) / h) ** 2)
        terms.append(ctx.beta * ((row[:-2] - 2 * c + row[2:]) / tau**2) ** 2)
        terms.append(ctx.beta * ((u[i - 1, 1:-1] - 2 * c + u[i + 1, 1:-1]) / h**2) ** 2)
    return np.concatenate(terms) / (N * M)


def exact_objective(ctx: FunctionalContext, u) -> float:
    u = u.values if isinstance(u, Field) else np.asarray(u, dtype=np.float64)
    return math.fsum(objective_terms(ctx, u))


def fd_gradient(ctx: FunctionalContext, u, eps: float = 1e-6) -> Field:
    """Central differences over free coordinates; constrained ones are 0."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    base = u.values if isinstance(u, Field) else np.asarray(u, dtype=np.float64)
    grad = np.zeros_like(base)
    work = base.copy()
    for i, j in zip(*np.nonzero(ctx.free)):
        orig = work[i, j]
        work[i, j] = orig + eps
        # difference the term arrays first: unaffected summands cancel exactly
        plus = objective_terms(ctx, work)
        work[i, j] = orig - eps
        minus = objective_terms(ctx, work)
        work[i, j] = orig
        grad[i, j] = math.fsum(plus - minus) / (2 * eps)
    return Field(ctx.grid, grad)


def hessian(ctx: FunctionalContext, start) -> tuple[np.ndarray, np.ndarray]:
    """Probe ``(H, b)`` with ``grad = H z + b`` over the free coordinates ``z``.

    Exact only when the objective is quadratic (``a = 0``). The constrained
    entries are taken from ``start``; ``b`` is the gradient at free values 0.
    """
    base = start.values if isinstance(start, Field) else np.asarray(start, dtype=np.float64)
    u0 = base.copy()
    u0[ctx.free] = 0.0
    free_idx = np.nonzero(ctx.free.ravel())[0]
    _, g0 = ctx.value_and_gradient(u0)
    b = g0.ravel()[free_idx]
    n = free_idx.size
    H = np.empty((n, n))
    probe = u0.ravel()
    for col, k in enumerate(free_idx):
        probe[k] = 1.0
        _, gk = ctx.value_and_gradient(probe.reshape(u0.shape))
        H[:, col] = gk.ravel()[free_idx] - b
        probe[k] = 0.0
    return H, b


def dense_minimizer(ctx: FunctionalContext, start) -> Field:
    """Exact minimizer of the quadratic objective by a dense Cholesky solve."""
    if ctx.a != 0.0:
        raise ValueError("dense_minimizer needs a quadratic objective (a = 0)")
    if ctx.n_free > 2000:
        raise ValueError(f"{ctx.n_free} free variables is too many for a dense solve")
    H, b = hessian(ctx, start)
    H = 0.5 * (H + H.T)
    try:
        z = scipy.linalg.cho_solve(scipy.linalg.cho_factor(H), -b)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError("objective Hessian is not positive definite") from exc
    base = start.values if isinstance(start, Field) else np.asarray(start, dtype=np.float64)
    out = base.copy()
    out[ctx.free] = z
    return Field(ctx.grid, out)


def refined_forward(problem: ProblemSpec, coarse, levels: int = 1) -> Field:
    """Forward solution on a grid with spacings halved ``levels`` times,
    restricted back onto the nodes of ``coarse``."""
    k = 2**levels
    fine = make_grid((coarse.nx - 1) * k + 1, (coarse.nt - 1) * k + 1, coarse.t_half)
    u = solve_forward(problem, fine).values
    return Field(coarse, u[::k, ::k].copy())

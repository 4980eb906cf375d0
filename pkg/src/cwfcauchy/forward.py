"""Semi-implicit finite-difference solver for the forward problem.

Each step solves

    (u[i, j+1] - u[i, j]) / tau = (u[i-1, j+1] - 2 u[i, j+1] + u[i+1, j+1]) / h^2
                                  + a S(u[i, j]) + F[i, j]

for the interior nodes ``i = 1 .. N-2`` with Dirichlet values at both ends:
diffusion at the new level, nonlinearity and source at the old one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ForwardDivergenceError
from .grid import Field, Grid
from .model import ProblemSpec


@dataclass(frozen=True)
class CauchyData:
    """Lateral data at ``x = 1``: ``p_row = u(1, t_j)``, ``q_row = u_x(1, t_j)``."""

    p_row: np.ndarray
    q_row: np.ndarray

    def __post_init__(self):
        if self.p_row.shape != self.q_row.shape or self.p_row.ndim != 1:
            raise ValueError("p_row and q_row must be 1-D arrays of equal length")


def solve_forward(spec: ProblemSpec, grid: Grid) -> Field:
    N, M = grid.shape
    h, tau = grid.h, grid.tau
    x, t = grid.x, grid.t
    X, T = grid.mesh()

    u = np.empty(grid.shape)
    u[:, 0] = spec.initial(x)
    u[0, :] = spec.left_bc(t)
    u[-1, :] = spec.right_bc(t)
    src = np.broadcast_to(spec.source(X, T), grid.shape)
    if not np.all(np.isfinite(u[:, 0])):
        raise ForwardDivergenceError("initial layer is not finite", index=0)

    n = N - 2
    r = tau / h**2
    lower = np.full(n, -r)
    upper = np.full(n, -r)
    diag = np.full(n, 1.0 + 2.0 * r)
    for j in range(M - 1):
        old = u[1:-1, j]
        with np.errstate(over="ignore", invalid="ignore"):
            phi = spec.a * spec.s_kind.s(old) + src[1:-1, j] if spec.a else src[1:-1, j]
            rhs = old + tau * phi
        rhs[0] += r * u[0, j + 1]
        rhs[-1] += r * u[-1, j + 1]
        u[1:-1, j + 1] = kernels.thomas(lower, diag, upper, rhs)
        if not np.all(np.isfinite(u[:, j + 1])):
            raise ForwardDivergenceError(
                f"forward solution is not finite at time layer {j + 1}", index=j + 1
            )
    return Field(grid, u)


def extract_flux(u: Field) -> CauchyData:
    """One-sided flux at ``x = 1``, chosen so ``p - h*q`` recovers ``u[N-2]``."""
    v = u.values
    p = v[-1, :].copy()
    q = (v[-1, :] - v[-2, :]) / u.grid.h
    return CauchyData(p, q)

"""Discrete Carleman-weighted Tikhonov functional and its exact gradient.

With ``K`` the residual of the PDE on the grid and ``Y`` the discrete H^2
density,

    J(u) = 1/(N M) * [ sum_{i=1..N-2, j=0..M-2} w_ij K_ij^2
                       + beta * sum_{i=1..N-2, j=1..M-2} Y_ij ]

where ``w`` is the squared Carleman weight. The residual differences in time
forward and in space at the old level ``j``. The gradient is the exact
derivative of this discrete sum (the adjoint of the difference stencils),
zeroed on the constrained nodes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .carleman import CarlemanWeight, weight_table
from .grid import Field, Grid
from .model import CODE_CUSTOM, NonlinearityKind, ProblemSpec


def constraint_mask(grid: Grid) -> np.ndarray:
    """Nodes whose values are held fixed during minimization.

    These are the ``x = 0`` column, the first and last time rows, and the two
    columns ``i = N-2, N-1`` that carry the lateral data.
    """
    mask = np.zeros(grid.shape, dtype=bool)
    mask[0, :] = True
    mask[-2:, :] = True
    mask[:, 0] = True
    mask[:, -1] = True
    return mask


@dataclass(frozen=True)
class FunctionalContext:
    grid: Grid
    weight: CarlemanWeight
    beta: float
    a: float
    s_kind: NonlinearityKind
    source_table: np.ndarray
    constraint_mask: np.ndarray
    backend: str = kernels.BACKEND
    free: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # the theory wants beta in (0, 1); 0 and large values are legal probes
        if not (np.isfinite(self.beta) and self.beta >= 0.0):
            raise ValueError(f"beta must be finite and >= 0, got {self.beta}")
        if self.a < 0:
            raise ValueError("a must be >= 0")
        if self.backend not in ("numba", "numpy"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.backend == "numba" and (
            kernels.numba_backend is None or self.s_kind.code == CODE_CUSTOM
        ):
            object.__setattr__(self, "backend", "numpy")
        src = np.ascontiguousarray(self.source_table, dtype=np.float64)
        src.setflags(write=False)
        object.__setattr__(self, "source_table", src)
        free = ~np.asarray(self.constraint_mask, dtype=bool)
        free.setflags(write=False)
        object.__setattr__(self, "free", free)

    @property
    def n_free(self) -> int:
        return int(self.free.sum())

    # raw-array entry points used by the minimizer and the oracles

    def _nonlinearity(self, u):
        with np.errstate(over="ignore", invalid="ignore"):
            return self.s_kind.s(u), self.s_kind.s_prime(u)

    def value(self, u: np.ndarray) -> float:
        g = self.grid
        if self.backend == "numba":
            return kernels.numba_backend.objective(
                u, self.weight.table, self.source_table, self.s_kind.code,
                self.a, self.beta, g.h, g.tau,
            )
        s, _ = self._nonlinearity(u)
        return kernels.numpy_backend.objective(
            u, self.weight.table, self.source_table, s, self.a, self.beta, g.h, g.tau
        )

    def value_and_gradient(self, u: np.ndarray) -> tuple[float, np.ndarray]:
        g = self.grid
        if self.backend == "numba":
            return kernels.numba_backend.value_and_gradient(
                u, self.weight.table, self.source_table, self.s_kind.code,
                self.a, self.beta, g.h, g.tau, self.free,
            )
        s, sp = self._nonlinearity(u)
        return kernels.numpy_backend.value_and_gradient(
            u, self.weight.table, self.source_table, s, sp,
            self.a, self.beta, g.h, g.tau, self.free,
        )


def make_context(
    grid: Grid,
    problem: ProblemSpec,
    lam: float,
    beta: float,
    backend: str | None = None,
) -> FunctionalContext:
    X, T = grid.mesh()
    src = np.broadcast_to(problem.source(X, T), grid.shape)
    return FunctionalContext(
        grid=grid,
        weight=weight_table(grid, lam),
        beta=float(beta),
        a=problem.a,
        s_kind=problem.s_kind,
        source_table=src,
        constraint_mask=constraint_mask(grid),
        backend=backend or kernels.BACKEND,
    )


def _values(ctx: FunctionalContext, u) -> np.ndarray:
    if isinstance(u, Field):
        if u.grid != ctx.grid:
            raise ValueError("field and context live on different grids")
        u = u.values
    return np.ascontiguousarray(u, dtype=np.float64)


def residual_table(ctx: FunctionalContext, u) -> np.ndarray:
    """Residual ``K[i, j]`` for ``i = 1..N-2, j = 0..M-2``, shape ``(N-2, M-1)``."""
    v = _values(ctx, u)
    s, _ = ctx._nonlinearity(v)
    g = ctx.grid
    K = kernels.numpy_backend.residual(v, ctx.source_table, s, ctx.a, g.h, g.tau)
    return K[1:-1, :-1]


def evaluate_J(ctx: FunctionalContext, u) -> float:
    return float(ctx.value(_values(ctx, u)))


def gradient_J(ctx: FunctionalContext, u) -> Field:
    _, g = ctx.value_and_gradient(_values(ctx, u))
    return Field(ctx.grid, g)


def regularizer_density(grid: Grid, d: np.ndarray) -> float:
    """``sum Y_ij`` over the regularized nodes: the discrete H^2 norm squared of ``d``."""
    K0 = np.zeros(grid.shape)
    # objective with unit beta, zero weight and zero source isolates the beta-term
    return float(
        kernels.numpy_backend.objective(
            np.asarray(d, dtype=np.float64), K0, K0, K0, 0.0, 1.0, grid.h, grid.tau
        ) * grid.nx * grid.nt
    )

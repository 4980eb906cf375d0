"""Fixed-step gradient descent and conjugate gradients for the discrete functional.

Gradients are zero on constrained nodes, so every iterate keeps the start's
boundary values bit for bit.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np

from .errors import MinimizerDivergenceError
from .functional import FunctionalContext
from .grid import Field

log = logging.getLogger(__name__)


class Method(str, enum.Enum):
    GD = "gd"
    CG = "cg"


@dataclass(frozen=True)
class MinimizerConfig:
    method: Method = Method.GD
    step: float = 1e-8
    iterations: int = 10_000
    record_every: int = 100

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if not self.step > 0:
            raise ValueError("step must be positive")
        if self.iterations < 1 or self.record_every < 1:
            raise ValueError("iterations and record_every must be >= 1")


@dataclass
class MinimizeReport:
    final: Field
    iterations: np.ndarray  # iteration index of each history sample
    j_history: np.ndarray
    grad_norm_history: np.ndarray


def initial_guess(ctx: FunctionalContext, noisy_rows, known_initial=None) -> Field:
    """Zero field carrying the noisy data in its last two columns.

    ``noisy_rows`` is ``(u[N-1, :], u[N-2, :])`` as returned by
    ``noise.apply_noise``. With ``known_initial`` the ``j = 0`` row is set to
    it, overriding the data columns there.
    """
    N, M = ctx.grid.shape
    last, second = (np.asarray(r, dtype=np.float64) for r in noisy_rows)
    if last.shape != (M,) or second.shape != (M,):
        raise ValueError(f"noisy rows must have length {M}")
    u = np.zeros((N, M))
    u[N - 1, :] = last
    u[N - 2, :] = second
    if known_initial is not None:
        f = np.asarray(known_initial, dtype=np.float64)
        if f.shape != (N,):
            raise ValueError(f"known_initial must have length {N}")
        u[:, 0] = f
    return Field(ctx.grid, u)


def minimize(ctx: FunctionalContext, start: Field, cfg: MinimizerConfig) -> MinimizeReport:
    grid = ctx.grid
    h, tau = grid.h, grid.tau
    u = np.ascontiguousarray(start.values, dtype=np.float64).copy()
    its, js, gns = [], [], []
    cg = cfg.method is Method.CG
    restart = min(ctx.n_free, 1000)
    direction = None
    gg_prev = 0.0

    for n in range(cfg.iterations + 1):
        # overflow is caught by the finiteness check below
        with np.errstate(over="ignore", invalid="ignore"):
            value, grad = ctx.value_and_gradient(u)
            gg = float(np.dot(grad.ravel(), grad.ravel()))
        if not (np.isfinite(value) and np.isfinite(gg)):
            raise MinimizerDivergenceError(
                f"objective or gradient is not finite at iteration {n}; step too large?",
                index=n,
            )
        if n % cfg.record_every == 0 or n == cfg.iterations:
            its.append(n)
            js.append(value)
            gns.append(np.sqrt(gg * h * tau))
        if n == cfg.iterations:
            break
        if cg:
            if direction is None or n % restart == 0 or gg_prev == 0.0:
                direction = -grad
            else:
                direction = -grad + (gg / gg_prev) * direction
            gg_prev = gg
            u += cfg.step * direction
        else:
            u -= cfg.step * grad

    log.debug("minimize: J %.6g -> %.6g after %d iterations", js[0], js[-1], cfg.iterations)
    return MinimizeReport(
        final=Field(grid, u),
        iterations=np.asarray(its),
        j_history=np.asarray(js),
        grad_norm_history=np.asarray(gns),
    )

"""Carleman weight ``exp[2*lam*(x^2 - t^2)]`` and level domains ``{x^2 - t^2 > alpha}``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid

# 2*lam*|x^2 - t^2| must stay below log(DBL_MAX) ~ 709.78
_MAX_EXPONENT = 709.0


def level_function(grid: Grid) -> np.ndarray:
    """``x_i^2 - t_j^2`` at every node."""
    return grid.x[:, None] ** 2 - grid.t[None, :] ** 2


@dataclass(frozen=True)
class CarlemanWeight:
    lam: float
    table: np.ndarray  # squared weight at each node


@dataclass(frozen=True)
class LevelDomainMask:
    alpha: float
    mask: np.ndarray

    @property
    def count(self) -> int:
        return int(self.mask.sum())


def weight_table(grid: Grid, lam: float) -> CarlemanWeight:
    if not lam >= 0.0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    psi = level_function(grid)
    if 2.0 * lam * np.max(np.abs(psi)) > _MAX_EXPONENT:
        raise OverflowError(f"Carleman weight overflows double precision for lambda={lam}")
    table = np.exp(2.0 * lam * psi)
    table.setflags(write=False)
    return CarlemanWeight(float(lam), table)


def level_domain_mask(grid: Grid, alpha: float) -> LevelDomainMask:
    upper = 1.0 - grid.t_half**2
    if not 0.0 < alpha < upper:
        raise ValueError(f"alpha must lie in (0, {upper}), got {alpha}")
    mask = level_function(grid) > alpha
    mask.setflags(write=False)
    return LevelDomainMask(float(alpha), mask)

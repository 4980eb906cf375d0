"""Reconstruction error measures: line errors, time slices, subdomain errors."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .carleman import LevelDomainMask
from .errors import DataMismatchError
from .grid import Field

DENOMINATOR_FLOOR = 1e-14


@dataclass(frozen=True)
class LineErrorProfile:
    """Relative L2-in-time error per spatial node.

    ``defined[i]`` is False where the truth has (near) zero norm along the
    line; ``error`` holds 0.0 there and such nodes are skipped by ``mean``.
    """

    x: np.ndarray
    error: np.ndarray
    defined: np.ndarray

    def mean(self, x_min: float = 0.0, x_max: float = 1.0) -> float:
        sel = self.defined & (self.x >= x_min - 1e-12) & (self.x <= x_max + 1e-12)
        if not sel.any():
            raise ValueError(f"no defined line errors in [{x_min}, {x_max}]")
        return float(self.error[sel].mean())

    def at(self, x: float) -> float:
        i = nearest_node(self.x, x)
        if not self.defined[i]:
            raise ValueError(f"line error undefined at x={self.x[i]}")
        return float(self.error[i])


def _check_same_grid(a: Field, b: Field):
    if a.grid != b.grid:
        raise DataMismatchError(f"fields live on different grids: {a.grid} vs {b.grid}")


def line_error(recon: Field, truth: Field) -> LineErrorProfile:
    _check_same_grid(recon, truth)
    tau = truth.grid.tau
    num = np.sqrt(np.sum((recon.values - truth.values) ** 2, axis=1) * tau)
    den = np.sqrt(np.sum(truth.values**2, axis=1) * tau)
    defined = den >= DENOMINATOR_FLOOR
    err = np.divide(num, den, out=np.zeros_like(num), where=defined)
    return LineErrorProfile(truth.grid.x.copy(), err, defined)


def nearest_node(coords: np.ndarray, x: float) -> int:
    """Index of the node closest to ``x``; ties go to the smaller index."""
    return int(np.argmin(np.abs(coords - x)))


def slice_at(fld: Field, x: float) -> tuple[float, np.ndarray]:
    """Values along the node nearest to ``x``, with that node's coordinate."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    i = nearest_node(fld.grid.x, x)
    return float(fld.grid.x[i]), fld.values[i].copy()


def subdomain_error(recon: Field, truth: Field, mask: LevelDomainMask) -> float:
    """Discrete H^{1,0} norm of ``recon - truth`` over the masked nodes.

    The x-derivative term uses forward differences only where both nodes of
    the pair are masked.
    """
    _check_same_grid(recon, truth)
    m = np.asarray(mask.mask, dtype=bool)
    if m.shape != truth.grid.shape:
        raise DataMismatchError("mask does not match the field grid")
    if not m.any():
        raise ValueError(f"level domain for alpha={mask.alpha} contains no nodes")
    g = truth.grid
    d = recon.values - truth.values
    dx = (d[1:] - d[:-1]) / g.h
    pair = m[1:] & m[:-1]
    total = np.sum(d[m] ** 2) + np.sum(dx[pair] ** 2)
    return float(np.sqrt(total * g.h * g.tau))

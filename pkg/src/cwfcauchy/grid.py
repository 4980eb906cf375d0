"""Uniform space-time mesh on [0, 1] x [-T, T] and grid functions on it."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import DataMismatchError, InvalidFunctionError, InvalidMeshError

MIN_NODES = 4


@dataclass(frozen=True)
class Grid:
    """Endpoint-inclusive uniform mesh.

    Node ``i`` sits at ``x_i = i / (nx - 1)`` and node ``j`` at
    ``t_j = -T + 2T * j / (nt - 1)``, so the last nodes land exactly on
    ``x = 1`` and ``t = T``.
    """

    nx: int
    nt: int
    t_half: float
    x: np.ndarray = field(init=False, repr=False, compare=False)
    t: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.nx < MIN_NODES or self.nt < MIN_NODES:
            raise InvalidMeshError(
                f"need nx >= {MIN_NODES} and nt >= {MIN_NODES}, got nx={self.nx}, nt={self.nt}"
            )
        if not 0.0 < self.t_half < 1.0:
            raise InvalidMeshError(f"t_half must lie in (0, 1), got {self.t_half}")
        x = np.arange(self.nx) / (self.nx - 1)
        # scaled index fractions, never accumulated sums: endpoints are exact
        t = self.t_half * (2.0 * (np.arange(self.nt) / (self.nt - 1)) - 1.0)
        x.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "t", t)

    @property
    def h(self) -> float:
        return 1.0 / (self.nx - 1)

    @property
    def tau(self) -> float:
        return 2.0 * self.t_half / (self.nt - 1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.nt)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(X, T)`` coordinate arrays of shape ``(nx, nt)``."""
        return np.meshgrid(self.x, self.t, indexing="ij")


def make_grid(nx: int, nt: int, t_half: float) -> Grid:
    if int(nx) != nx or int(nt) != nt:
        raise InvalidMeshError("node counts must be integers")
    return Grid(int(nx), int(nt), float(t_half))


@dataclass
class Field:
    """Real values on the nodes of ``grid``; ``values[i, j]`` is at ``(x_i, t_j)``."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != self.grid.shape:
            raise DataMismatchError(
                f"values have shape {self.values.shape}, grid expects {self.grid.shape}"
            )

    def copy(self) -> "Field":
        return Field(self.grid, self.values.copy())

    @classmethod
    def zeros(cls, grid: Grid) -> "Field":
        return cls(grid, np.zeros(grid.shape))


def sample(func: Callable[[np.ndarray, np.ndarray], np.ndarray], grid: Grid) -> Field:
    """Evaluate ``func(x, t)`` at every node.

    ``func`` is called once with broadcast coordinate arrays, so it must
    accept numpy arrays.
    """
    X, T = grid.mesh()
    vals = np.broadcast_to(np.asarray(func(X, T), dtype=np.float64), grid.shape).copy()
    if not np.all(np.isfinite(vals)):
        raise InvalidFunctionError("sampled function produced non-finite values")
    return Field(grid, vals)


# --- CSV serialization -------------------------------------------------------

_FMT = "%.17g"


def write_field_csv(path, fld: Field) -> None:
    """Write ``x,t,value`` rows, time index outermost."""
    g = fld.grid
    X, T = g.mesh()
    # transpose so the flattened order runs over i fastest inside each j
    data = np.column_stack([X.T.ravel(), T.T.ravel(), fld.values.T.ravel()])
    np.savetxt(path, data, delimiter=",", header="x,t,value", comments="", fmt=_FMT)


def read_field_csv(path) -> Field:
    with open(path, newline="") as fh:
        header = next(csv.reader(fh))
    if [h.strip() for h in header] != ["x", "t", "value"]:
        raise DataMismatchError(f"{path}: expected header x,t,value, got {header}")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    xs = np.unique(data[:, 0])
    ts = np.unique(data[:, 1])
    nx, nt = xs.size, ts.size
    if data.shape[0] != nx * nt:
        raise DataMismatchError(f"{path}: {data.shape[0]} rows do not form a {nx}x{nt} grid")
    try:
        grid = make_grid(nx, nt, float(ts[-1]))
    except InvalidMeshError as exc:
        raise DataMismatchError(f"{path}: {exc}") from exc
    if not (np.allclose(xs, grid.x, atol=1e-12) and np.allclose(ts, grid.t, atol=1e-12)):
        raise DataMismatchError(f"{path}: node coordinates are not a uniform grid")
    return Field(grid, data[:, 2].reshape(nt, nx).T.copy())


def write_series_csv(path, t: np.ndarray, values: np.ndarray, name: str) -> None:
    np.savetxt(
        path, np.column_stack([t, values]), delimiter=",",
        header=f"t,{name}", comments="", fmt=_FMT,
    )


def read_series_csv(path) -> tuple[np.ndarray, np.ndarray]:
    data = np.loadtxt(Path(path), delimiter=",", skiprows=1, ndmin=2)
    return data[:, 0].copy(), data[:, 1].copy()

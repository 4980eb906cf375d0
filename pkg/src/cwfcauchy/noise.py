"""Uniform noise on the lateral Cauchy data, scaled by the data's peak magnitude."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forward import CauchyData


@dataclass(frozen=True)
class NoiseSpec:
    """``level`` is relative to ``max|p|`` and ``max|q|``; 0.05 means 5 %.

    Draws come from numpy's PCG64 generator seeded with ``seed``.
    ``shared_draws`` reuses one draw sequence for both rows instead of
    drawing them independently.
    """

    level: float = 0.05
    seed: int = 0
    shared_draws: bool = False

    def __post_init__(self):
        if not self.level >= 0.0:
            raise ValueError(f"noise level must be >= 0, got {self.level}")


def apply_noise(data: CauchyData, spec: NoiseSpec, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Return the noisy boundary columns ``(u[N-1, :], u[N-2, :])``."""
    p, q = data.p_row, data.q_row
    if h <= 0:
        raise ValueError("h must be positive")
    rng = np.random.default_rng(spec.seed)
    sigma_p = rng.uniform(-1.0, 1.0, p.size)
    sigma_q = sigma_p if spec.shared_draws else rng.uniform(-1.0, 1.0, q.size)
    p_max = np.max(np.abs(p))
    q_max = np.max(np.abs(q))
    last = p + spec.level * p_max * sigma_p
    second = p - h * (q + spec.level * q_max * sigma_q)
    return last, second

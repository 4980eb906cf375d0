"""PDE problem definition: u_t = u_xx + a*S(u) + F(x, t) on (0,1) x (-T,T)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidFunctionError

# integer codes understood by the compiled kernels; custom kinds use -1
CODE_NONE, CODE_SIN2, CODE_EXP04, CODE_CUSTOM = 0, 1, 2, -1


@dataclass(frozen=True)
class NonlinearityKind:
    """A nonlinearity ``S`` together with its derivative ``S'``.

    Both callables must accept and return numpy arrays.
    """

    name: str
    s: Callable[[np.ndarray], np.ndarray]
    s_prime: Callable[[np.ndarray], np.ndarray]
    code: int = CODE_CUSTOM

    @classmethod
    def custom(cls, s, s_prime, name="custom"):
        return cls(name, s, s_prime, CODE_CUSTOM)

    @classmethod
    def from_name(cls, name: str) -> "NonlinearityKind":
        try:
            return _CATALOG[name.lower()]
        except KeyError:
            raise ValueError(
                f"unknown nonlinearity {name!r}; choose from {sorted(_CATALOG)}"
            ) from None


def _zero(u):
    return np.zeros_like(np.asarray(u, dtype=np.float64))


def _sin2(u):
    return np.sin(u) ** 2


def _sin2_prime(u):
    return np.sin(2.0 * u)


def _exp04(u):
    return np.exp(0.4 * np.asarray(u, dtype=np.float64))


def _exp04_prime(u):
    return 0.4 * np.exp(0.4 * np.asarray(u, dtype=np.float64))


NONE = NonlinearityKind("none", _zero, _zero, CODE_NONE)
SIN2 = NonlinearityKind("sin2", _sin2, _sin2_prime, CODE_SIN2)
EXP04 = NonlinearityKind("exp04", _exp04, _exp04_prime, CODE_EXP04)
_CATALOG = {k.name: k for k in (NONE, SIN2, EXP04)}


def eval_nonlinearity(kind: NonlinearityKind, u):
    """Return ``(S(u), S'(u))``; raises if either is not finite."""
    with np.errstate(over="ignore", invalid="ignore"):
        s = kind.s(u)
        sp = kind.s_prime(u)
    if not (np.all(np.isfinite(s)) and np.all(np.isfinite(sp))):
        raise InvalidFunctionError(f"nonlinearity {kind.name} is not finite at u={u!r}")
    return s, sp


@dataclass(frozen=True)
class ProblemSpec:
    """Coefficient ``a``, nonlinearity and the data ``F, f, g, p``.

    ``source(x, t)``, ``initial(x)``, ``left_bc(t)`` and ``right_bc(t)``
    must be numpy-vectorized. Corner compatibility is not required.
    """

    a: float
    s_kind: NonlinearityKind
    source: Callable
    initial: Callable
    left_bc: Callable
    right_bc: Callable

    def __post_init__(self):
        if not self.a >= 0.0:
            raise ValueError(f"nonlinearity strength a must be >= 0, got {self.a}")


def paper_source(x, t):
    return 10.0 * np.sin(100.0 * ((x - 0.5) ** 2 + t**2))


def paper_initial(x):
    return 10.0 * (x - x**2)


def paper_left_bc(t):
    return 10.0 * np.sin(10.0 * (t - 0.5) * (t + 0.5))


def paper_right_bc(t):
    return np.sin(10.0 * (t + 0.5))


def paper_problem(a: float, s_kind: NonlinearityKind) -> ProblemSpec:
    """The benchmark problem used in all experiments of this package."""
    return ProblemSpec(
        float(a), s_kind, paper_source, paper_initial, paper_left_bc, paper_right_bc
    )


def zero_problem(a: float = 0.0, s_kind: NonlinearityKind = NONE) -> ProblemSpec:
    zero2 = lambda x, t: np.zeros(np.broadcast(x, t).shape)  # noqa: E731
    zero1 = lambda z: np.zeros(np.shape(z))  # noqa: E731
    return ProblemSpec(float(a), s_kind, zero2, zero1, zero1, zero1)

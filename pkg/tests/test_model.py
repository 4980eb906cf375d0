import math

import numpy as np
import pytest

from cwfcauchy import EXP04, NONE, SIN2, NonlinearityKind, eval_nonlinearity, make_grid, paper_problem
from cwfcauchy.errors import InvalidFunctionError


def test_paper_problem_values():
    pr = paper_problem(0.0, NONE)
    assert pr.initial(0.5) == pytest.approx(2.5)
    assert pr.left_bc(0.5) == 0.0
    assert pr.right_bc(-0.5) == 0.0


def test_negative_a_rejected():
    with pytest.raises(ValueError):
        paper_problem(-1.0, SIN2)


@pytest.mark.parametrize("kind, u, expected", [
    (SIN2, 0.0, (0.0, 0.0)),
    (EXP04, 0.0, (1.0, 0.4)),
    (SIN2, math.pi / 4, (0.5, 1.0)),
    (NONE, 3.0, (0.0, 0.0)),
])
def test_eval_nonlinearity(kind, u, expected):
    s, sp = eval_nonlinearity(kind, u)
    assert (s, sp) == pytest.approx(expected, abs=1e-15)


def test_exp04_overflow():
    with pytest.raises(InvalidFunctionError):
        eval_nonlinearity(EXP04, 1e4)


@pytest.mark.parametrize("kind", [SIN2, EXP04, NONE])
def test_derivative_consistency(kind, rng):
    u = rng.uniform(-10, 10, 100)
    eps = 1e-5
    fd = (kind.s(u + eps) - kind.s(u - eps)) / (2 * eps)
    assert np.max(np.abs(kind.s_prime(u) - fd)) <= 1e-6


def test_from_name():
    assert NonlinearityKind.from_name("Sin2") is SIN2
    with pytest.raises(ValueError):
        NonlinearityKind.from_name("cubic")


def test_paper_data_bounds():
    g = make_grid(301, 301, 0.5)
    X, T = g.mesh()
    pr = paper_problem(0.0, NONE)
    assert np.max(np.abs(pr.source(X, T))) <= 10
    assert np.max(np.abs(pr.initial(g.x))) <= 2.5
    assert np.max(np.abs(pr.left_bc(g.t))) <= 10
    assert np.max(np.abs(pr.right_bc(g.t))) <= 1

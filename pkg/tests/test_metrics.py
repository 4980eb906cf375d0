import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cwfcauchy import Field, level_domain_mask, line_error, make_grid, slice_at, subdomain_error
from cwfcauchy.errors import DataMismatchError


def smooth(g):
    X, T = g.mesh()
    return Field(g, 1.0 + np.sin(3 * X) * np.cos(2 * T))


def test_line_error_examples(paper_grid):
    truth = smooth(paper_grid)
    assert np.all(line_error(truth, truth).error == 0)
    np.testing.assert_allclose(line_error(Field(paper_grid, 2 * truth.values), truth).error, 1.0, rtol=1e-14)
    ones = Field(paper_grid, np.ones(paper_grid.shape))
    np.testing.assert_allclose(line_error(Field(paper_grid, np.full(paper_grid.shape, 1.1)), ones).error,
                               0.1, rtol=1e-12)


def test_line_error_flags_zero_lines(small_grid):
    t = np.ones(small_grid.shape)
    t[3] = 0.0
    prof = line_error(Field(small_grid, t + 0.5), Field(small_grid, t))
    assert not prof.defined[3] and prof.error[3] == 0.0
    assert prof.defined.sum() == small_grid.nx - 1
    assert np.all(np.isfinite(prof.error))


@given(st.floats(0.0, 10.0))
def test_line_error_linear_in_perturbation(c):
    g = make_grid(9, 17, 0.5)
    truth = smooth(g)
    d = np.cos(np.arange(g.nx * g.nt)).reshape(g.shape)
    e1 = line_error(Field(g, truth.values + d), truth).error
    ec = line_error(Field(g, truth.values + c * d), truth).error
    np.testing.assert_allclose(ec, c * e1, rtol=1e-9, atol=1e-15)


def test_slice_examples(paper_grid):
    f = smooth(paper_grid)
    x, vals = slice_at(f, 1.0)
    assert x == 1.0 and np.array_equal(vals, f.values[-1])
    x, _ = slice_at(f, 0.6)
    assert x == 19 / 31
    x, vals = slice_at(Field(paper_grid, np.full(paper_grid.shape, 4.0)), 0.3)
    assert np.all(vals == 4.0)
    with pytest.raises(ValueError):
        slice_at(f, 1.5)


def test_slice_tie_goes_left():
    g = make_grid(5, 4, 0.5)  # nodes 0, .25, .5, ...
    x, _ = slice_at(Field.zeros(g), 0.375)
    assert x == 0.25


def test_subdomain_error(paper_grid):
    truth = smooth(paper_grid)
    mask = level_domain_mask(paper_grid, 0.3)
    assert subdomain_error(truth, truth, mask) == 0.0
    c = 0.7
    shifted = Field(paper_grid, truth.values + c)
    expected = math.sqrt(c * c * paper_grid.h * paper_grid.tau * mask.count)
    assert subdomain_error(shifted, truth, mask) == pytest.approx(expected, rel=1e-12)


def test_subdomain_monotone(paper_grid, rng):
    truth = smooth(paper_grid)
    recon = Field(paper_grid, truth.values + rng.normal(size=paper_grid.shape))
    errs = [subdomain_error(recon, truth, level_domain_mask(paper_grid, a)) for a in np.linspace(0.05, 0.74, 20)]
    assert np.all(np.diff(errs) <= 1e-15)


def test_subdomain_brute_force(rng):
    g = make_grid(9, 12, 0.5)
    truth = Field(g, rng.normal(size=g.shape))
    recon = Field(g, rng.normal(size=g.shape))
    mask = level_domain_mask(g, 0.2)
    d = recon.values - truth.values
    total = 0.0
    for i in range(g.nx):
        for j in range(g.nt):
            if mask.mask[i, j]:
                total += d[i, j] ** 2
                if i + 1 < g.nx and mask.mask[i + 1, j]:
                    total += ((d[i + 1, j] - d[i, j]) / g.h) ** 2
    assert subdomain_error(recon, truth, mask) == pytest.approx(math.sqrt(total * g.h * g.tau), rel=1e-12)


def test_mismatched_grids():
    a, b = smooth(make_grid(8, 16, 0.5)), smooth(make_grid(8, 17, 0.5))
    with pytest.raises(DataMismatchError):
        line_error(a, b)


def test_profile_mean_window(paper_grid):
    truth = smooth(paper_grid)
    prof = line_error(Field(paper_grid, truth.values * 1.5), truth)
    assert prof.mean(0.45, 1.0) == pytest.approx(0.5)
    assert prof.at(0.6) == pytest.approx(0.5)

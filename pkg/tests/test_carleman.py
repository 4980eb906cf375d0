import math

import numpy as np
import pytest

from cwfcauchy import level_domain_mask, make_grid, weight_table


def test_lambda_zero_is_unit(paper_grid):
    assert np.all(weight_table(paper_grid, 0.0).table == 1.0)


def test_weight_values():
    g = make_grid(5, 5, 0.5)  # x in {0, .25, .., 1}, t in {-.5, .., .5}
    w = weight_table(g, 4.0).table
    assert w[-1, 2] == pytest.approx(2980.9579870417283, rel=1e-15)
    assert w[0, 0] == pytest.approx(0.1353352832366127, rel=1e-15)


def test_weight_even_in_time(paper_grid):
    w = weight_table(paper_grid, 3.0).table
    np.testing.assert_allclose(w, w[:, ::-1], rtol=1e-14)


def test_weight_monotone_in_lambda(paper_grid):
    psi = paper_grid.x[:, None] ** 2 - paper_grid.t[None, :] ** 2
    w3, w4 = weight_table(paper_grid, 3.0).table, weight_table(paper_grid, 4.0).table
    assert np.all(w4[psi > 0] > w3[psi > 0])
    assert np.all(w4[psi < 0] < w3[psi < 0])
    assert np.all(w3 > 0)


def test_weight_rejects_bad_lambda(paper_grid):
    with pytest.raises(ValueError):
        weight_table(paper_grid, -1.0)
    with pytest.raises(OverflowError):
        weight_table(paper_grid, 400.0)


def test_mask_membership():
    g = make_grid(11, 11, 0.5)  # x = 0.5 is node 5, t = 0.4 is node 9
    m = level_domain_mask(g, 0.7).mask
    assert m[10, 5]
    assert not m[5, 9]


def test_mask_limit_and_edges(paper_grid):
    m = level_domain_mask(paper_grid, 0.7499).mask
    assert m.any()
    xs, ts = np.nonzero(m)
    assert np.all(paper_grid.x[xs] > np.sqrt(0.7499))
    assert m.sum() < level_domain_mask(paper_grid, 0.6).mask.sum()
    # on t = +-T the mask holds exactly where x^2 > alpha + T^2
    T = paper_grid.t_half
    for alpha in (0.05, 0.3, 0.6, 0.74):
        mm = level_domain_mask(paper_grid, alpha).mask
        edge = paper_grid.x**2 > alpha + T**2
        assert np.array_equal(mm[:, 0], edge) and np.array_equal(mm[:, -1], edge)


def test_mask_monotone(paper_grid):
    alphas = np.linspace(0.01, 0.74, 30)
    masks = [level_domain_mask(paper_grid, a).mask for a in alphas]
    for lo, hi in zip(masks, masks[1:]):
        assert np.all(lo | ~hi)  # hi subset of lo
    assert masks[np.searchsorted(alphas, 0.3)].sum() >= level_domain_mask(paper_grid, 0.6).mask.sum()


@pytest.mark.parametrize("alpha", [0.0, 0.75, 1.0, -0.1])
def test_mask_rejects_alpha(paper_grid, alpha):
    with pytest.raises(ValueError):
        level_domain_mask(paper_grid, alpha)


def test_weight_separates_level_domain(paper_grid):
    lam, alpha = 4.0, 0.3
    w = weight_table(paper_grid, lam).table
    m = level_domain_mask(paper_grid, alpha).mask
    assert np.all(w[m] > math.exp(2 * lam * alpha))
    assert np.all(w[~m] <= math.exp(2 * lam * alpha))

import numpy as np
import pytest

from tvdeconv import grid
from oracles import inner_product_loops


def test_inner_product_all_ones():
    ones = np.ones((2, 2))
    assert grid.inner_product(ones, ones) == 4.0


def test_inner_product_with_zero():
    f = np.arange(12.0).reshape(3, 4)
    assert grid.inner_product(f, np.zeros_like(f)) == 0.0


def test_inner_product_matches_loop_oracle():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(8, 8))
    b = rng.normal(size=(8, 8))
    fast = grid.inner_product(a, b)
    slow = inner_product_loops(a, b)
    assert abs(fast - slow) <= 1e-12 * max(abs(slow), 1.0)


def test_inner_product_field_sums_all_channels():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(6, 4, 5))
    b = rng.normal(size=(6, 4, 5))
    assert abs(grid.inner_product(a, b) - inner_product_loops(a, b)) < 1e-12 * 100


def test_inner_product_shape_mismatch():
    with pytest.raises(ValueError):
        grid.inner_product(np.zeros((2, 2)), np.zeros((2, 3)))


def test_zero_mean_project_ones():
    assert np.allclose(grid.zero_mean_project(np.ones((3, 3))), 0.0)


def test_zero_mean_project_noop_on_zero_mean():
    f = np.array([[1.0, -1.0], [2.0, -2.0]])
    np.testing.assert_allclose(grid.zero_mean_project(f), f)


def test_zero_mean_project_hand_case():
    f = np.array([[0.0, 0.0], [0.0, 1.0]])
    np.testing.assert_allclose(grid.zero_mean_project(f), f - 0.25)


def test_zero_mean_project_idempotent():
    rng = np.random.default_rng(2)
    f = rng.normal(size=(9, 7)) + 3.0
    once = grid.zero_mean_project(f)
    twice = grid.zero_mean_project(once)
    np.testing.assert_allclose(twice, once, atol=1e-12 * np.max(np.abs(f)))
    assert abs(once.mean()) <= 1e-12 * np.max(np.abs(f))


def test_is_zero_mean():
    assert grid.is_zero_mean(np.zeros((4, 4)))
    assert grid.is_zero_mean(np.array([[1.0, -1.0]]))
    assert not grid.is_zero_mean(np.ones((4, 4)))


def test_norms_zero():
    assert grid.norms(np.zeros((3, 3))) == (0.0, 0.0, 0.0)


def test_norms_three_four_five():
    l1, l2, linf = grid.norms(np.array([[3.0, -4.0]]))
    assert (l1, l2, linf) == (7.0, 5.0, 4.0)


def test_norms_match_loops():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(16, 16))
    l1, l2, linf = grid.norms(x)
    assert abs(l1 - sum(abs(v) for v in x.ravel())) < 1e-12 * l1
    assert abs(l2 * l2 - inner_product_loops(x, x)) < 1e-12 * l2 * l2
    assert linf == max(abs(v) for v in x.ravel())


def test_cauchy_schwarz():
    rng = np.random.default_rng(4)
    for _ in range(20):
        a = rng.normal(size=(5, 6))
        b = rng.normal(size=(5, 6))
        assert abs(grid.inner_product(a, b)) <= grid.norms(a)[1] * grid.norms(b)[1] + 1e-12


def test_zero_mean_orthogonal_to_constants():
    rng = np.random.default_rng(5)
    g = grid.zero_mean_project(rng.normal(size=(8, 8)))
    const = 3.7 * np.ones((8, 8))
    assert abs(grid.inner_product(g, const)) <= 1e-10 * np.max(np.abs(g)) * g.size


def test_stretch_to_range():
    rng = np.random.default_rng(6)
    f = rng.normal(size=(7, 7))
    out = grid.stretch_to_range(f)
    assert out.min() == 0.0 and out.max() == 255.0
    order = np.argsort(f.ravel())
    assert np.all(np.diff(out.ravel()[order]) >= 0.0)


def test_stretch_to_range_constant_maps_to_low():
    np.testing.assert_allclose(grid.stretch_to_range(np.full((3, 3), 9.0)), 0.0)


def test_check_boundary():
    assert grid.check_boundary(grid.PERIODIC) == grid.PERIODIC
    with pytest.raises(ValueError):
        grid.check_boundary("mirror")

import numpy as np
import pytest

from genhess.generators import slater_system
from genhess.hessian import generalized_hessian, mangasarian_vectors
from genhess.oracle import (
    RadiusTooLarge,
    fd_gradient,
    fd_hessian,
    safe_radius,
    sample_limiting_hessians,
)
from genhess.problem import LinearSystem, classify_indices, eval_grad


def test_fd_gradient_counterexample(s2):
    np.testing.assert_allclose(fd_gradient(s2, [3.0, 7.0], 1e-5), [3.0, 0.0], atol=1e-6)


def test_fd_gradient_feasible_region(s3):
    np.testing.assert_allclose(fd_gradient(s3, [-1.0, -2.0], 1e-5), [0.0, 0.0], atol=0)


def test_fd_gradient_three_rows(s3):
    np.testing.assert_allclose(fd_gradient(s3, [-1.0, 2.0], 1e-5), [1.0, 3.0], atol=1e-6)


def test_fd_step_must_be_positive(s3):
    with pytest.raises(ValueError):
        fd_gradient(s3, [0.0, 0.0], 0.0)


def test_fd_hessian_inside_cell(s3):
    np.testing.assert_allclose(fd_hessian(s3, [-1.0, 2.0]), [[1.0, 1.0], [1.0, 2.0]], atol=1e-8)


def test_counterexample_samples(s2, origin):
    ext = generalized_hessian(s2, origin)[2].matrices()
    batch = sample_limiting_hessians(s2, origin, 0.1, 200, seed=1, extremes=ext)
    assert len(batch.samples) == 200 and batch.no_match == 0
    assert batch.matched_extremes() == {0}


def test_three_row_samples_hit_all_cells(s3, origin):
    ext = generalized_hessian(s3, origin)[2].matrices()
    batch = sample_limiting_hessians(s3, origin, 0.1, 2000, seed=2, extremes=ext)
    assert batch.no_match == 0
    assert batch.matched_extremes() == set(range(6))
    hits = np.bincount([s.match for s in batch.samples], minlength=6)
    assert hits.min() >= 1


def test_samples_stay_in_box_and_off_hyperplanes(s3, origin):
    batch = sample_limiting_hessians(s3, origin, 0.05, 300, seed=3)
    for s in batch.samples:
        assert np.abs(s.point - origin).max() <= 0.05
        r = s3.A @ s.point - s3.b
        assert np.all(np.abs(r) > 10 * 1e-5 * s3.row_norms)


def test_interior_point_single_extreme(s3):
    x = np.array([-1.0, 2.0])
    ext = generalized_hessian(s3, x)[2].matrices()
    batch = sample_limiting_hessians(s3, x, 0.2, 100, seed=4, extremes=ext)
    assert batch.matched_extremes() == {0} and batch.no_match == 0


def test_determinism(s3, origin):
    a = sample_limiting_hessians(s3, origin, 0.1, 50, seed=9)
    b = sample_limiting_hessians(s3, origin, 0.1, 50, seed=9)
    assert all(np.array_equal(p.point, q.point) and p.v == q.v for p, q in zip(a.samples, b.samples))
    c = sample_limiting_hessians(s3, origin, 0.1, 50, seed=10)
    assert not all(np.array_equal(p.point, q.point) for p, q in zip(a.samples, c.samples))


def test_radius_too_large(s3):
    x = np.array([0.5, -2.0])
    # residuals (0.5, -2, -1.5) over l1 norms (1, 1, 2)
    assert safe_radius(s3, x) == pytest.approx(0.5)
    with pytest.raises(RadiusTooLarge) as info:
        sample_limiting_hessians(s3, x, 1.0, 10)
    assert info.value.safe == pytest.approx(0.5)


def test_zero_count(s3, origin):
    batch = sample_limiting_hessians(s3, origin, 0.1, 0)
    assert batch.samples == []


def test_samples_agree_with_exact_pieces():
    rng = np.random.default_rng(21)
    for _ in range(20):
        sys, x, _ = slater_system(rng, 8, 3, 4, integer=True)
        part, _, hull = generalized_hessian(sys, x)
        V = set(mangasarian_vectors(sys, part))
        radius = 0.5 * min(safe_radius(sys, x), 1.0)
        batch = sample_limiting_hessians(sys, x, radius, 100, seed=5, extremes=hull.matrices())
        for s in batch.samples:
            assert s.v in V
            assert np.linalg.norm(s.fd_hessian - s.exact_hessian) <= 1e-4
            assert s.match is not None and s.distance <= 1e-6


def test_fd_gradient_matches_exact_at_random_points():
    rng = np.random.default_rng(22)
    sys = LinearSystem(rng.normal(size=(7, 4)), rng.normal(size=7))
    checked = 0
    for _ in range(1000):
        x = rng.normal(size=4) * 3
        h = 1e-5 * (1 + np.linalg.norm(x))
        if np.any(np.abs(sys.A @ x - sys.b) <= 10 * h * sys.row_norms):
            continue
        g = eval_grad(sys, x)
        assert np.linalg.norm(fd_gradient(sys, x, h) - g) <= 1e-6 * (1 + np.linalg.norm(g))
        checked += 1
    assert checked > 900


def test_only_active_rows_gives_infinite_safe_radius(s3, origin):
    assert classify_indices(s3, origin).active == (0, 1, 2)
    assert safe_radius(s3, origin) == float("inf")

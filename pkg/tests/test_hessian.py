import itertools

import numpy as np
import pytest
from scipy.optimize import linprog

from genhess.generators import independent_active_system, slater_system
from genhess.hessian import (
    ActiveSetTooLarge,
    analyze,
    cell_count_bound,
    check_li,
    check_slater,
    enumerate_achievable_patterns,
    generalized_hessian,
    hull_inside_interval_set,
    limiting_hessians,
    mangasarian_extremes,
    mangasarian_vectors,
    verify_evtushenko,
    verify_mangasarian_equality,
)
from genhess.paper import THREE_ROW_HULL
from genhess.problem import LinearSystem, classify_indices


def brute_force_patterns(V):
    """Every sign vector whose margin LP (solved by HiGHS) is positive."""
    k, n = V.shape
    U = V / np.linalg.norm(V, axis=1)[:, None]
    found = set()
    for signs in itertools.product((1, -1), repeat=k):
        s = np.array(signs)
        A_ub = np.hstack([-(s[:, None] * U), np.ones((k, 1))])
        res = linprog(
            np.r_[np.zeros(n), -1.0], A_ub=A_ub, b_ub=np.zeros(k), bounds=[(-1, 1)] * n + [(0, 1)]
        )
        if -res.fun > 1e-7:
            found.add(signs)
    return found


def same_matrix_set(got, want, tol=1e-9):
    got, want = [np.asarray(g) for g in got], [np.asarray(w) for w in want]
    return len(got) == len(want) and all(any(np.abs(g - w).max() <= tol for g in got) for w in want)


class TestSlater:
    def test_three_rows_holds(self, s3):
        res = check_slater(s3)
        assert res.holds
        assert np.all(s3.A @ res.witness < s3.b)

    def test_counterexample_fails(self, s2):
        assert not check_slater(s2).holds

    def test_single_row(self):
        res = check_slater(LinearSystem([[1.0, 0.0]], [1.0]))
        assert res.holds and res.witness[0] < 1.0

    @pytest.mark.parametrize("b0, holds", [(-1.0, False), (0.0, False), (2.0, True)])
    def test_zero_rows(self, b0, holds):
        sys = LinearSystem([[0.0, 0.0], [1.0, 1.0]], [b0, 1.0])
        assert check_slater(sys).holds is holds

    def test_far_interior(self):
        # Interior sits near x1 = 1e3; no bounding box on x is assumed.
        sys = LinearSystem([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]], [1001.0, -1000.0, 0.0])
        res = check_slater(sys)
        assert res.holds and np.all(sys.A @ res.witness < sys.b)

    def test_random_slater_systems(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            sys, _, _ = slater_system(rng, int(rng.integers(1, 12)), int(rng.integers(1, 6)), 0)
            res = check_slater(sys)
            assert res.holds and np.all(sys.A @ res.witness < sys.b)


class TestIndependence:
    def test_three_rows(self, s3, origin):
        li = check_li(s3, classify_indices(s3, origin))
        assert (li.holds, li.rank, li.count) == (False, 2, 3)

    def test_counterexample(self, s2, origin):
        li = check_li(s2, classify_indices(s2, origin))
        assert (li.holds, li.rank, li.count) == (False, 1, 2)

    def test_empty(self, s3):
        assert check_li(s3, classify_indices(s3, [-1.0, -1.0])).holds

    def test_zero_row_active_is_dependent(self):
        sys = LinearSystem([[0.0, 0.0], [1.0, 0.0]], [0.0, 0.0])
        li = check_li(sys, classify_indices(sys, np.zeros(2)))
        assert not li.holds and li.rank == 1


class TestEnumeration:
    def test_counterexample(self, s2, origin):
        pats = enumerate_achievable_patterns(s2, classify_indices(s2, origin))
        assert sorted(p.signs for p in pats) == [(-1, 1), (1, -1)]

    def test_three_rows(self, s3, origin):
        pats = enumerate_achievable_patterns(s3, classify_indices(s3, origin))
        assert len(pats) == 6
        assert (1, 1, -1) not in {p.signs for p in pats}
        assert (-1, -1, 1) not in {p.signs for p in pats}

    def test_no_active(self, s3):
        pats = enumerate_achievable_patterns(s3, classify_indices(s3, [-1.0, 2.0]))
        assert len(pats) == 1 and pats[0].signs == ()

    def test_witnesses_certify_patterns(self, s3, origin):
        part = classify_indices(s3, origin)
        for p in enumerate_achievable_patterns(s3, part):
            proj = s3.A[list(p.indices)] @ p.witness
            assert np.all(np.array(p.signs) * proj >= 1e-7 * s3.row_norms[list(p.indices)])

    def test_output_sorted_by_bits(self, s3, origin):
        pats = enumerate_achievable_patterns(s3, classify_indices(s3, origin))
        bits = [p.bits() for p in pats]
        assert bits == sorted(bits)

    def test_cap(self):
        sys = LinearSystem(np.ones((5, 2)), np.zeros(5))
        with pytest.raises(ActiveSetTooLarge) as info:
            enumerate_achievable_patterns(sys, classify_indices(sys, np.zeros(2)), max_active=4)
        assert info.value.count == 5

    def test_zero_rows_excluded(self):
        sys = LinearSystem([[0.0, 0.0], [1.0, 0.0]], [0.0, 0.0])
        part = classify_indices(sys, np.zeros(2))
        assert part.active == (0, 1)
        pats = enumerate_achievable_patterns(sys, part)
        assert [p.indices for p in pats] == [(1,), (1,)]

    def test_only_zero_rows_active(self):
        sys = LinearSystem([[0.0, 0.0], [1.0, 0.0]], [0.0, -1.0])
        part, pats, hull = generalized_hessian(sys, np.zeros(2))
        assert len(pats) == 1 and len(hull.extremes) == 1
        np.testing.assert_array_equal(hull.extremes[0].matrix, [[1.0, 0.0], [0.0, 0.0]])

    def test_matches_brute_force(self):
        rng = np.random.default_rng(12)
        for _ in range(60):
            n, k = int(rng.integers(1, 4)), int(rng.integers(1, 6))
            V = rng.integers(-2, 3, size=(k, n)).astype(float)
            V[np.abs(V).sum(axis=1) == 0, 0] = 1.0
            sys = LinearSystem(V, np.zeros(k))
            pats = enumerate_achievable_patterns(sys, classify_indices(sys, np.zeros(n)))
            assert {p.signs for p in pats} == brute_force_patterns(V)
            assert len(pats) <= cell_count_bound(k, n)

    def test_sampled_directions_are_found(self):
        rng = np.random.default_rng(13)
        for _ in range(30):
            n, k = int(rng.integers(2, 5)), int(rng.integers(2, 8))
            V = rng.normal(size=(k, n))
            sys = LinearSystem(V, np.zeros(k))
            got = {p.signs for p in enumerate_achievable_patterns(sys, classify_indices(sys, np.zeros(n)))}
            for y in rng.normal(size=(500, n)):
                assert tuple(int(t) for t in np.sign(V @ y)) in got

    def test_general_position_attains_bound(self):
        rng = np.random.default_rng(14)
        for n, k in [(2, 4), (3, 5), (3, 3), (4, 6)]:
            V = rng.normal(size=(k, n))
            sys = LinearSystem(V, np.zeros(k))
            pats = enumerate_achievable_patterns(sys, classify_indices(sys, np.zeros(n)))
            assert len(pats) == cell_count_bound(k, n)


class TestHull:
    def test_counterexample(self, s2, origin):
        _, _, hull = generalized_hessian(s2, origin)
        assert same_matrix_set(hull.matrices(), [[[1.0, 0.0], [0.0, 0.0]]])

    def test_three_rows(self, s3, origin):
        _, _, hull = generalized_hessian(s3, origin)
        assert same_matrix_set(hull.matrices(), THREE_ROW_HULL)

    def test_violated_interior(self, s3):
        _, _, hull = generalized_hessian(s3, [1.0, 1.0])
        assert len(hull.extremes) == 1
        np.testing.assert_allclose(hull.extremes[0].matrix, s3.A.T @ s3.A)

    def test_permuting_rows(self):
        rng = np.random.default_rng(15)
        for _ in range(30):
            sys, x, _ = slater_system(rng, 8, 3, 5, integer=True)
            perm = rng.permutation(sys.m)
            other = LinearSystem(sys.A[perm], sys.b[perm])
            h1 = generalized_hessian(sys, x)[2]
            h2 = generalized_hessian(other, x)[2]
            assert same_matrix_set(h1.matrices(), h2.matrices(), tol=1e-12)

    def test_hull_extremes_inside_interval_set(self):
        rng = np.random.default_rng(16)
        for _ in range(50):
            sys, x, _ = slater_system(rng, 9, 3, 5, integer=True)
            part, _, hull = generalized_hessian(sys, x)
            assert hull_inside_interval_set(sys, part, hull)
            V = set(mangasarian_vectors(sys, part))
            assert all(e.v in V for e in hull.extremes)


class TestMangasarianSet:
    def test_counterexample(self, s2, origin):
        ext = mangasarian_extremes(s2, classify_indices(s2, origin))
        assert len(ext) == 4
        assert same_matrix_set(
            {tuple(map(tuple, e.matrix)) for e in ext},
            [np.zeros((2, 2)), [[1.0, 0.0], [0.0, 0.0]], [[2.0, 0.0], [0.0, 0.0]]],
        )

    def test_three_rows(self, s3, origin):
        ext = mangasarian_extremes(s3, classify_indices(s3, origin))
        assert len(ext) == 8
        hit = [e for e in ext if e.v == (0, 0, 1)]
        np.testing.assert_array_equal(hit[0].matrix, [[1.0, 1.0], [1.0, 1.0]])

    def test_no_active(self, s3):
        part = classify_indices(s3, [-1.0, 2.0])
        ext = mangasarian_extremes(s3, part)
        assert len(ext) == 1
        np.testing.assert_array_equal(ext[0].matrix, [[0.0, 0.0], [0.0, 1.0]] + np.ones((2, 2)))

    def test_ordered_from_d_minus_down(self, s3, origin):
        vs = mangasarian_vectors(s3, classify_indices(s3, origin))
        assert vs[0] == (1, 1, 1) and vs[-1] == (0, 0, 0)

    def test_cap(self):
        sys = LinearSystem(np.ones((3, 1)), np.zeros(3))
        with pytest.raises(ActiveSetTooLarge):
            mangasarian_extremes(sys, classify_indices(sys, np.zeros(1)), max_active=2)


class TestVerdicts:
    def test_counterexample(self, s2, origin):
        part, _, hull = generalized_hessian(s2, origin)
        v = verify_mangasarian_equality(s2, part, hull)
        assert not v.equal
        np.testing.assert_array_equal(v.witness.matrix, [[2.0, 0.0], [0.0, 0.0]])
        assert any(np.array_equal(c.matrix, np.zeros((2, 2))) for c, _ in v.non_members)
        e = verify_evtushenko(s2, part, hull)
        assert (e.plus_member, e.minus_member) == (False, False)

    def test_three_rows(self, s3, origin):
        part, _, hull = generalized_hessian(s3, origin)
        v = verify_mangasarian_equality(s3, part, hull)
        assert not v.equal
        np.testing.assert_array_equal(v.witness.matrix, [[1.0, 1.0], [1.0, 1.0]])
        e = verify_evtushenko(s3, part, hull)
        assert (e.plus_member, e.minus_member) == (True, True)
        np.testing.assert_array_equal(e.plus.matrix, np.zeros((2, 2)))
        np.testing.assert_array_equal(e.minus.matrix, [[2.0, 1.0], [1.0, 2.0]])

    def test_independent_rows_equal(self):
        rng = np.random.default_rng(17)
        for _ in range(40):
            n = int(rng.integers(1, 5))
            sys, x = independent_active_system(rng, int(rng.integers(n, 9)), n, int(rng.integers(0, n + 1)))
            part, pats, hull = generalized_hessian(sys, x)
            assert verify_mangasarian_equality(sys, part, hull).equal
            assert len(pats) == 2 ** len(part.active)

    def test_smooth_point(self, s3):
        part, _, hull = generalized_hessian(s3, [-1.0, 2.0])
        assert verify_mangasarian_equality(s3, part, hull).equal
        e = verify_evtushenko(s3, part, hull)
        assert e.plus_member and e.minus_member


class TestAnalyze:
    def test_counterexample(self, s2, origin):
        rep = analyze(s2, origin)
        assert not rep.slater.holds and not rep.li_condition.holds
        assert not rep.mangasarian.equal
        assert not rep.evtushenko.plus_member and not rep.evtushenko.minus_member

    def test_three_rows(self, s3, origin):
        rep = analyze(s3, origin)
        assert rep.slater.holds and not rep.li_condition.holds
        assert not rep.mangasarian.equal
        assert rep.evtushenko.plus_member and rep.evtushenko.minus_member
        assert rep.invariant_violations() == []

    def test_random_smooth_points(self):
        rng = np.random.default_rng(18)
        for _ in range(30):
            m, n = int(rng.integers(1, 8)), int(rng.integers(1, 5))
            sys = LinearSystem(rng.normal(size=(m, n)), rng.normal(size=m))
            rep = analyze(sys, rng.normal(size=n))
            assert rep.partition.active == ()
            assert rep.mangasarian.equal
            assert rep.evtushenko.plus_member and rep.evtushenko.minus_member

    def test_limiting_hessians_dedups(self, s2, origin):
        part = classify_indices(s2, origin)
        pats = enumerate_achievable_patterns(s2, part)
        assert len(pats) == 2
        assert len(limiting_hessians(s2, part, pats).extremes) == 1

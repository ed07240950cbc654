import itertools
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from eqehrhart import _intlinalg as la
from eqehrhart.families import (cross_polytope, cycle_polytope, segment,
                                standard_cross_polytope, symmetric_edge_polytope)
from eqehrhart.groups import group_closure
from eqehrhart.lattice import (DegeneratePolytope, RationalPolytope, Sublattice,
                               affine_decomposition, denominator, enumerate_points,
                               fixed_sublattice, free_sum, hull_halfspaces, lattice_point_count,
                               lattice_point_counts, polytope_from_halfspaces,
                               restrict_to_sublattice)


def in_hull_lp(pts, x):
    """Membership oracle independent of the facet code: x as a convex combination."""
    A = np.array([[float(c) for c in p] for p in pts]).T
    A_eq = np.vstack([A, np.ones(len(pts))])
    b_eq = np.array([float(c) for c in x] + [1.0])
    res = linprog(np.zeros(len(pts)), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * len(pts),
                  method="highs")
    return res.status == 0


def brute_count(P, m):
    pts = [tuple(m * c for c in v) for v in P.vertices]
    lo = [math.floor(min(p[i] for p in pts)) for i in range(P.ambient_dim)]
    hi = [math.ceil(max(p[i] for p in pts)) for i in range(P.ambient_dim)]
    box = itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
    return sum(1 for x in box if in_hull_lp(pts, x))


rational = st.builds(F, st.integers(-4, 4), st.integers(1, 3))


def random_polytope(dim):
    return st.lists(st.tuples(*[rational] * dim), min_size=dim + 1, max_size=dim + 4).filter(
        lambda pts: la.rank([[a - b for a, b in zip(p, pts[0])] for p in pts]) == dim
    ).map(lambda pts: RationalPolytope(pts, dim))


class TestHull:
    def test_p12_facets(self):
        P = cross_polytope(1, 2)
        assert set(hull_halfspaces(P)) == {((1, 2), 1), ((1, -2), 1), ((-1, 2), 1), ((-1, -2), 1)}

    def test_square(self):
        P = RationalPolytope([(1, 1), (1, -1), (-1, 1), (-1, -1)])
        assert set(hull_halfspaces(P)) == {((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)}

    def test_simplex(self):
        P = RationalPolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert set(hull_halfspaces(P)) == {((-1, 0, 0), 0), ((0, -1, 0), 0), ((0, 0, -1), 0),
                                           ((1, 1, 1), 1)}

    def test_degenerate_rejected(self):
        with pytest.raises(DegeneratePolytope):
            hull_halfspaces(cycle_polytope(3))

    def test_redundant_points_dropped(self):
        P = RationalPolytope([(0, 0), (2, 0), (0, 2), (1, 1), (F(1, 2), F(1, 2))])
        assert set(P.vertices) == {(0, 0), (2, 0), (0, 2)}

    @pytest.mark.parametrize("k,d", [(1, 2), (3, 3), (5, 4)])
    def test_cross_membership_form(self, k, d):
        # sum_{i<d} |x_i| + (2/k)|x_d| <= 1 is k*sum(s_i x_i) + 2 s_d x_d <= k over all signs;
        # these normals are primitive because k is odd
        want = {(tuple(k * x for x in s[:-1]) + (2 * s[-1],), k)
                for s in itertools.product((1, -1), repeat=d)}
        assert set(hull_halfspaces(cross_polytope(k, d))) == want

    @settings(max_examples=25, deadline=None)
    @given(random_polytope(2), st.lists(st.tuples(rational, rational), min_size=5, max_size=5))
    def test_soundness_2d(self, P, probes):
        hs = hull_halfspaces(P)
        for v in P.vertices:
            tight = sum(1 for a, b in hs if sum(x * y for x, y in zip(a, v)) == b)
            assert all(sum(x * y for x, y in zip(a, v)) <= b for a, b in hs)
            assert tight >= 2
        for x in probes:
            assert P.contains(x) == in_hull_lp(P.vertices, x)

    @settings(max_examples=15, deadline=None)
    @given(random_polytope(3))
    def test_halfspaces_roundtrip(self, P):
        assert polytope_from_halfspaces(hull_halfspaces(P), 3) == P


class TestCounting:
    def test_spec_examples(self):
        simplex = RationalPolytope([tuple(int(i == j) for j in range(4)) for i in range(4)])
        assert lattice_point_count(simplex, 2) == 10
        assert lattice_point_count(cycle_polytope(3), 1) == 7
        assert lattice_point_count(cross_polytope(1, 2), 1) == 3
        assert lattice_point_count(simplex, 0) == 1

    def test_lower_dimensional(self):
        diag = RationalPolytope([(1, 1), (-1, -1)])
        assert [lattice_point_count(diag, m) for m in range(4)] == [1, 3, 5, 7]
        offset = RationalPolytope([(F(1, 2), F(1, 2), 0), (F(1, 2), F(-1, 2), 1)])
        assert [lattice_point_count(offset, m) for m in range(5)] == [
            brute_count(offset, m) if m else 1 for m in range(5)]

    @settings(max_examples=20, deadline=None)
    @given(random_polytope(2), st.integers(1, 3))
    def test_brute_force_2d(self, P, m):
        assert lattice_point_count(P, m) == brute_count(P, m)

    @settings(max_examples=10, deadline=None)
    @given(random_polytope(3))
    def test_brute_force_3d(self, P):
        assert lattice_point_count(P, 1) == brute_count(P, 1)
        assert lattice_point_count(P, 2) == brute_count(P, 2)

    @pytest.mark.parametrize("P", [cross_polytope(1, 2), cross_polytope(3, 3), cycle_polytope(4),
                                   cycle_polytope(5)], ids=["P12", "P33", "C4", "C5"])
    def test_dilation_consistency(self, P):
        for m in range(1, 7):
            assert lattice_point_count(P, m) == lattice_point_count(P.dilate(m), 1)

    @pytest.mark.parametrize("P", [cross_polytope(3, 3), cycle_polytope(4)], ids=["P33", "C4"])
    def test_central_symmetry(self, P):
        pts = set(enumerate_points(P, 2))
        assert len(pts) == lattice_point_count(P, 2)
        assert {tuple(-x for x in p) for p in pts} == pts
        assert all(P.dilate(2).contains(p) for p in pts)

    def test_counts_parallel_match_serial(self):
        P = cycle_polytope(5)
        assert lattice_point_counts(P, range(6), workers=2) == lattice_point_counts(P, range(6), 1)

    def test_thin_triangle_closed_form(self):
        P = RationalPolytope([(0, 0), (F(1, 7), 0), (0, F(1, 3))])
        for m in (21, 2100, 210000):
            a, b = m // 7, m // 3
            assert lattice_point_count(P, m) == sum((b * (a - x)) // a + 1 for x in range(a + 1))

    def test_exactness_paths_agree(self):
        # float64, int64 and Python-int arithmetic must give identical counts
        from eqehrhart.lattice import _counter_for, _float_bounds, _int_bounds
        for P in (cycle_polytope(5), cross_polytope(3, 3)):
            counter = _counter_for(P)[1]
            for m in (3, 6):
                assert counter._run(m, np.float64, _float_bounds) == \
                    counter._run(m, np.int64, _int_bounds) == counter._run(m, object, _int_bounds)


class TestDenominatorAndSums:
    def test_denominator(self):
        assert denominator(cross_polytope(3, 2)) == 2
        assert denominator(cycle_polytope(4)) == 1
        assert denominator(RationalPolytope([(F(1, 3), 0), (0, F(1, 2))])) == 6

    def test_free_sum_examples(self):
        sq = free_sum(segment(-1, 1), segment(-1, 1))
        assert sq == standard_cross_polytope(2)
        for k, d in [(1, 2), (3, 3), (5, 4)]:
            Q = free_sum(segment(F(-k, 2), F(k, 2)), standard_cross_polytope(d - 1))
            # the half-integral axis comes first here
            perm = [tuple(v[1:]) + (v[0],) for v in Q.vertices]
            assert RationalPolytope(perm) == cross_polytope(k, d)
        point = RationalPolytope([(0,)])
        assert free_sum(point, segment(-1, 1)).vertex_set() == {(0, 1), (0, -1)}

    def test_free_sum_vertex_count(self):
        A, B = standard_cross_polytope(2), cross_polytope(3, 2)
        assert len(free_sum(A, B).vertices) == len(A.vertices) + len(B.vertices)

    def test_free_sum_needs_origin(self):
        with pytest.raises(ValueError):
            free_sum(segment(1, 2), segment(-1, 1))


class TestSublattices:
    def test_fixed_sublattice_examples(self):
        swap = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
        L = fixed_sublattice(swap)
        assert L.rank == 2 and (1, 1, 0, 0) in L and (0, 0, 1, 1) in L and (1, 0, 0, 0) not in L
        assert fixed_sublattice([[1, 0], [0, 1]]).rank == 2
        R = fixed_sublattice([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
        assert R.rank == 2 and (0, 0, 1) not in R and (3, -2, 0) in R

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=3))
    def test_saturation(self, vecs):
        if la.rank(vecs) == 0:
            return
        L = Sublattice.from_vectors(vecs, 3)
        # every integer vector of the rational span lies in L
        for x in itertools.product(range(-3, 4), repeat=3):
            if L.in_span(x):
                assert x in L

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
    def test_hnf_transform(self, A):
        H, U = la.hnf_with_transform(A)
        assert la.matmul(U, A) == [list(r) for r in H] or la.matmul(U, A) == H
        assert abs(la.det(U)) == 1

    def test_restrict_examples(self):
        seg = RationalPolytope([(1, 1), (-1, -1)])
        assert restrict_to_sublattice(seg, Sublattice.from_vectors([(1, 1)], 2)) == \
            RationalPolytope([(1,), (-1,)])
        P = cross_polytope(3, 2)
        assert restrict_to_sublattice(P, Sublattice.full(2)) == P

    def test_restrict_outside_span(self):
        with pytest.raises(ValueError):
            restrict_to_sublattice(RationalPolytope([(1, 0), (0, 1)]),
                                   Sublattice.from_vectors([(1, 1)], 2))


class TestAffineDecomposition:
    def test_simplex_index_four(self):
        sigma = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
        G = group_closure([sigma])
        D = affine_decomposition(G.elements, (1, 1, 1, 1))
        assert D.index == 4
        assert all(D.in_level(tuple(int(i == j) for j in range(4)), 1) for i in range(4))
        assert not D.in_level((1, 1, 0, 0), 1)

    def test_trivial(self):
        D = affine_decomposition([[[1, 0], [0, 1]]], (1, 0))
        assert D.index == 1 and D.orthogonal_basis == ((0, 1),)

    def test_reflection_nonprimitive(self):
        D = affine_decomposition([[[1, 0], [0, 1]], [[1, 0], [0, -1]]], (2, 0))
        assert D.index == 2 and D.orthogonal_basis == ((0, 1),)

    def test_orthogonality(self):
        sigma = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
        G = group_closure([sigma])
        D = affine_decomposition(G.elements, (1, 1, 1, 1))
        assert all(D.inner(b, D.e) == 0 for b in D.orthogonal_basis)

    def test_e_must_be_fixed(self):
        with pytest.raises(ValueError):
            affine_decomposition([[[0, 1], [1, 0]]], (1, 0))


def test_symmetric_edge_polytope_examples():
    C3 = symmetric_edge_polytope([(0, 1), (1, 2), (2, 0)], 3)
    assert len(C3.vertices) == 6 and C3.affine_dim == 2
    edge = symmetric_edge_polytope([(0, 1)], 2)
    assert edge.vertex_set() == {(1, -1), (-1, 1)}
    C4 = cycle_polytope(4)
    assert len(C4.vertices) == 8 and C4.affine_dim == 3
    with pytest.raises(ValueError):
        symmetric_edge_polytope([], 3)

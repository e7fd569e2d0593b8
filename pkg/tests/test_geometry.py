import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from trispline.errors import (
    DegenerateTriangle,
    DuplicateTriangle,
    OverlappingTriangles,
    PointOutsideMesh,
    TransversalOnEdge,
)
from trispline.geometry import (
    Point2,
    Triangulation,
    as_rational,
    barycentric_to_cartesian,
    cartesian_to_barycentric,
    default_transversal_point,
    find_shared_edges,
    locate_point,
    point,
    point_to_affine_coords,
)

T1 = (point(0, 0), point(1, 0), point(1, 1))
T2 = (point(0, 0), point(1, 1), point(0, 1))


def fr(*xs):
    return tuple(F(x) for x in xs)


class TestRationalParsing:
    def test_decimal_strings_are_exact(self):
        assert as_rational("0.1") == F(1, 10)
        assert as_rational("1/3") == F(1, 3)
        assert as_rational(" -2.50 ") == F(-5, 2)

    def test_floats_use_shortest_repr(self):
        assert as_rational(0.1) == F(1, 10)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            as_rational(float("nan"))


class TestBarycentric:
    def test_known_points_in_first_triangle(self):
        assert cartesian_to_barycentric(T1, ("0.2", "0.1")) == fr("0.8", "0.1", "0.1")
        assert cartesian_to_barycentric(T1, ("0.5", "0.1")) == fr("0.5", "0.4", "0.1")

    def test_known_points_in_second_triangle(self):
        assert cartesian_to_barycentric(T2, ("0.7", "0.8")) == fr("0.2", "0.7", "0.1")
        assert cartesian_to_barycentric(T2, ("0.2", "0.7")) == fr("0.3", "0.2", "0.5")

    @pytest.mark.parametrize("k", range(3))
    def test_vertices(self, k):
        want = [0, 0, 0]
        want[k] = 1
        assert cartesian_to_barycentric(T1, T1[k]) == tuple(want)

    def test_inverse_direction(self):
        assert barycentric_to_cartesian(T1, fr(1, 0, 0)) == T1[0]
        assert barycentric_to_cartesian(T1, fr("0.5", "0.4", "0.1")) == fr("0.5", "0.1")
        assert barycentric_to_cartesian(T2, fr("0.3", "0.2", "0.5")) == fr("0.2", "0.7")

    def test_degenerate(self):
        with pytest.raises(DegenerateTriangle):
            cartesian_to_barycentric((point(0, 0), point(1, 1), point(2, 2)), (0, 1))

    def test_round_trip_random_interior_points(self):
        rng = random.Random(7)
        tris = [T1, T2, (point("-1.5", 2), point("1/3", "-4"), point(5, "2.25"))]
        for verts in tris:
            for _ in range(100):
                w = [F(rng.randint(1, 50)) for _ in range(3)]
                b = tuple(x / sum(w) for x in w)
                p = barycentric_to_cartesian(verts, b)
                got = cartesian_to_barycentric(verts, p)
                assert got == b
                assert sum(got) == 1
                assert barycentric_to_cartesian(verts, got) == p


class TestLocate:
    def test_known_points(self, square):
        assert locate_point(square, ("0.2", "0.1")) == (0, fr("0.8", "0.1", "0.1"))
        assert locate_point(square, ("0.1", "0.3")) == (1, fr("0.7", "0.1", "0.2"))

    def test_outside(self, square):
        with pytest.raises(PointOutsideMesh):
            locate_point(square, (5, 5))

    def test_edge_point_goes_to_lowest_index(self, square):
        tri, b = locate_point(square, ("0.5", "0.5"))
        assert tri == 0
        assert b[1] == 0

    def test_total_over_closed_union(self, square):
        for i in range(11):
            for j in range(11):
                tri, b = square.locate((F(i, 10), F(j, 10)))
                assert min(b) >= 0


class TestSharedEdges:
    def test_square(self, square):
        (e,) = square.shared_edges
        assert (e.tri_a, e.tri_b) == (0, 1)
        assert e.vertex_ids == (0, 2)
        # q1 -> b1 on both, q2 -> b3 on T1 and b2 on T2 (zero-based locals)
        assert e.q_map_a == (0, 2)
        assert e.q_map_b == (0, 1)
        assert (e.off_edge_local_a, e.off_edge_local_b) == (1, 2)

    def test_single_triangle(self, single):
        assert single.shared_edges == ()

    def test_fan_matches_brute_force(self):
        verts = [(0, 0), (2, 0), (1, 2), (-1, 2), (-2, 0)]
        tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4)]
        mesh = Triangulation(verts, tris)
        brute = [(i, j) for i, j in combinations(range(3), 2) if len(set(tris[i]) & set(tris[j])) == 2]
        assert [(e.tri_a, e.tri_b) for e in mesh.shared_edges] == brute == [(0, 1), (1, 2)]

    def test_duplicate(self):
        with pytest.raises(DuplicateTriangle):
            find_shared_edges([(0, 1, 2), (2, 1, 0)])

    def test_edge_consistency(self, square):
        (e,) = square.shared_edges
        for k in range(1, 10):
            p = (F(k, 10), F(k, 10))
            ba = square.to_barycentric(0, p)
            bb = square.to_barycentric(1, p)
            assert ba[e.off_edge_local_a] == 0 and bb[e.off_edge_local_b] == 0
            for q in (0, 1):
                assert ba[e.q_map_a[q]] == bb[e.q_map_b[q]]


class TestValidation:
    def test_overlap_rejected(self):
        with pytest.raises(OverlappingTriangles):
            Triangulation([(0, 0), (2, 0), (0, 2), (1, 1), (3, 1)], [(0, 1, 2), (0, 3, 4)])

    def test_repeated_vertex_rejected(self):
        with pytest.raises(DegenerateTriangle):
            Triangulation([(0, 0), (1, 0), (0, 1)], [(0, 0, 1)])

    def test_zero_area_rejected(self):
        with pytest.raises(DegenerateTriangle):
            Triangulation([(0, 0), (1, 1), (2, 2)], [(0, 1, 2)])


class TestTransversal:
    def test_affine_coords_of_direction_point(self):
        assert point_to_affine_coords(T1, (1, 0)) == (0, 1, 0)
        assert point_to_affine_coords(T2, (1, 0)) == (1, 1, -1)
        assert point_to_affine_coords(T2, T2[2]) == (0, 0, 1)

    def test_default_is_off_edge_vertex_of_first_triangle(self, square):
        (e,) = square.shared_edges
        assert default_transversal_point(square, e) == Point2(1, 0)

    def test_override_on_edge_line(self, square):
        (e,) = square.shared_edges
        with pytest.raises(TransversalOnEdge):
            default_transversal_point(square, e, (1, 1))
        with pytest.raises(TransversalOnEdge):
            default_transversal_point(square, e, (3, 3))

    def test_override_accepted(self, square):
        (e,) = square.shared_edges
        u = default_transversal_point(square, e, (0, 1))
        assert point_to_affine_coords(T2, u) == (0, 0, 1)

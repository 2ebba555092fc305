import math

import pytest
from hypothesis import given, strategies as st

from planarcut.embedding import (
    PlanarEmbeddedGraph,
    Walk,
    ball,
    bfs_distances,
    boundary,
    faces,
    sphere,
)
from planarcut.errors import GraphFormatError, PreconditionError
from planarcut.generators import grid, hexagonal_patch, spider, triangular_disk, tree
from planarcut.graph_io import graph_to_bytes


def center(w, h=None):
    h = w if h is None else h
    return (h // 2) * w + w // 2


class TestConstruction:
    def test_triangle(self):
        g = PlanarEmbeddedGraph({0: [1, 2], 1: [2, 0], 2: [0, 1]}, (0, 1))
        assert (g.n_vertices, g.n_edges, g.n_faces) == (3, 3, 2)
        assert sorted(len(f) for f in faces(g)) == [3, 3]

    def test_ambiguous_outer_face_needs_designation(self):
        with pytest.raises(GraphFormatError, match="ambiguous"):
            PlanarEmbeddedGraph({0: [1, 2], 1: [2, 0], 2: [0, 1]})

    def test_single_edge(self):
        g = PlanarEmbeddedGraph({0: [1], 1: [0]})
        assert g.n_faces == 1
        assert len(faces(g)[0]) == 2

    def test_twin_involution_no_fixed_points(self):
        g = grid(4, 5)
        for d in range(g.n_darts):
            assert g.twin(d) != d
            assert g.twin(g.twin(d)) == d

    def test_face_orbits_partition_darts(self):
        for g in (grid(3, 3), triangular_disk(2), spider(3, 4)):
            seen = []
            for orbit in faces(g):
                seen.extend(orbit)
            assert sorted(seen) == list(range(g.n_darts))

    def test_face_lengths_sum_to_dart_count(self):
        g = grid(3, 3)
        lengths = sorted(len(f) for f in faces(g))
        assert lengths == [4, 4, 4, 4, 8]
        assert sum(lengths) == 2 * g.n_edges == 24

    def test_euler_gate_rejects_k5(self):
        rot = {i: [j for j in range(5) if j != i] for i in range(5)}
        with pytest.raises(GraphFormatError, match="not planar"):
            PlanarEmbeddedGraph(rot, (0, 1))

    def test_asymmetric_rotations_rejected(self):
        with pytest.raises(GraphFormatError):
            PlanarEmbeddedGraph({0: [1], 1: [0], 2: [0]})

    def test_disconnected_rejected(self):
        with pytest.raises(GraphFormatError, match="connected"):
            PlanarEmbeddedGraph({0: [1], 1: [0], 2: [3], 3: [2]})

    def test_unknown_neighbor_rejected(self):
        with pytest.raises(GraphFormatError, match="rotations.0"):
            PlanarEmbeddedGraph({0: [1, 9], 1: [0]})


class TestDistances:
    def test_center_distance_zero(self):
        g = grid(9, 9)
        assert bfs_distances(g, center(9)).distance(center(9)) == 0

    def test_neighbor_distance_one(self):
        g = grid(9, 9)
        c = center(9)
        assert bfs_distances(g, c).distance(c + 1) == 1

    def test_offset_2_3_is_5(self):
        g = grid(9, 9)
        c = center(9)
        assert bfs_distances(g, c).distance(c + 2 + 3 * 9) == 5

    def test_unknown_vertex(self):
        g = grid(3, 3)
        with pytest.raises(PreconditionError):
            bfs_distances(g, 99)

    def test_agrees_with_naive_oracle(self, bfs_oracle):
        for g in (grid(7, 9), triangular_disk(3), spider(5, 6), tree(2, 4),
                  hexagonal_patch(3, 4)):
            assert g.n_vertices <= 500
            v = int(g.vertex_ids[0])
            field = bfs_distances(g, v)
            oracle = bfs_oracle(g, v)
            assert field.as_dict() == oracle

    @given(st.integers(3, 8), st.integers(3, 8), st.data())
    def test_distance_field_is_lipschitz(self, w, h, data):
        g = grid(w, h)
        v = data.draw(st.integers(0, w * h - 1))
        field = bfs_distances(g, v)
        for u in map(int, g.vertex_ids):
            for nb in g.neighbors(u):
                assert abs(field.distance(u) - field.distance(nb)) <= 1


class TestBallsAndBoundary:
    def test_ball_radius_zero(self):
        g = grid(9, 9)
        assert ball(g, center(9), 0) == {center(9)}

    def test_interior_ball_and_sphere_radius_one(self):
        g = grid(9, 9)
        c = center(9)
        assert len(ball(g, c, 1)) == 5
        assert len(sphere(g, c, 1)) == 4

    def test_interior_sphere_is_4r(self):
        g = grid(101, 101)
        c = center(101)
        for r in range(1, 21):
            assert len(sphere(g, c, r)) == 4 * r

    def test_boundary_of_single_vertex(self):
        g = grid(9, 9)
        c = center(9)
        assert boundary(g, {c}) == set(g.neighbors(c))

    def test_boundary_of_everything_is_empty(self):
        g = grid(5, 5)
        assert boundary(g, set(map(int, g.vertex_ids))) == set()

    def test_boundary_of_ball_is_next_sphere(self):
        g = grid(21, 21)
        c = center(21)
        bd = boundary(g, ball(g, c, 2))
        assert bd == sphere(g, c, 3)
        assert len(bd) == 12

    def test_negative_radius(self):
        g = grid(3, 3)
        with pytest.raises(PreconditionError):
            ball(g, 0, -1)


class TestRim:
    def test_grid_rim_is_border(self):
        g = grid(5, 5)
        rim = g.rim_vertices
        assert rim == {v for v in range(25) if v % 5 in (0, 4) or v // 5 in (0, 4)}

    def test_tree_rim_is_leaves(self):
        g = spider(4, 6)
        assert g.rim_vertices == {6, 12, 18, 24}

    def test_rim_dist(self):
        g = grid(9, 9)
        assert g.rim_dist(center(9)) == 4
        assert g.horizon_ok(center(9), 3)
        assert not g.horizon_ok(center(9), 4)


class TestWalk:
    def test_from_vertices_roundtrip(self):
        g = grid(5, 5)
        w = Walk.from_vertices(g, [0, 1, 2, 7], closed=False)
        assert w.vertices() == [0, 1, 2, 7]
        assert w.reversed().vertices() == [7, 2, 1, 0]

    def test_closed_walk_validation(self):
        g = grid(5, 5)
        w = Walk.from_vertices(g, [0, 1, 6, 5], closed=True)
        assert len(w) == 4
        with pytest.raises(PreconditionError):
            Walk.from_vertices(g, [0, 1, 7], closed=False)


def test_operations_deterministic_bytes():
    a = graph_to_bytes(grid(6, 7))
    b = graph_to_bytes(grid(6, 7))
    assert a == b
    g = grid(21, 21)
    c = center(21)
    assert sorted(ball(g, c, 5)) == sorted(ball(g, c, 5))
    r1 = bfs_distances(g, c).as_dict()
    r2 = bfs_distances(g, c).as_dict()
    assert r1 == r2

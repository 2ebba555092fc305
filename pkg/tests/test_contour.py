"""Contour extraction, cross-checked by an independent cell-flood oracle."""

import pytest

from planarcut.contour import contour
from planarcut.embedding import PlanarEmbeddedGraph, ball, bfs_distances, sphere
from planarcut.generators import grid, spider, triangular_disk


def center(w):
    return (w // 2) * w + w // 2


def test_star_contour_traverses_each_edge_twice():
    star = PlanarEmbeddedGraph({0: [1, 2, 3], 1: [0], 2: [0], 3: [0]}, (0, 1))
    cp = contour(star, 0, 1)
    assert len(cp.walk) == 6
    assert cp.support == {0, 1, 2, 3}
    assert set(cp.canonical_occurrence) == {1, 2, 3}


def test_radius_zero_degenerate():
    g = grid(9, 9)
    cp = contour(g, center(9), 0)
    assert len(cp.walk) == 0
    assert cp.support == {center(9)}
    assert cp.canonical_occurrence == {center(9): 0}


def test_grid_radius_one_includes_center():
    g = grid(21, 21)
    c = center(21)
    cp = contour(g, c, 1)
    assert len(cp.walk) == 8
    assert cp.support == {c} | sphere(g, c, 1)


def test_support_within_ball_and_occurrences_unique():
    g = grid(21, 21)
    c = center(21)
    for r in (1, 2, 4, 7):
        cp = contour(g, c, r)
        assert cp.support <= ball(g, c, r)
        # every distance-r vertex on the walk has exactly one canonical slot
        dist = bfs_distances(g, c)
        on_walk_at_r = {v for v in cp.support if dist.distance(v) == r}
        assert set(cp.canonical_occurrence) == on_walk_at_r
        for v, pos in cp.canonical_occurrence.items():
            assert cp.vertex_at(pos) == v


def test_walk_is_closed_and_connected():
    for g, v in ((grid(21, 21), center(21)), (triangular_disk(8), 0), (spider(4, 20), 0)):
        vid = v if g.has_vertex(v) else int(g.vertex_ids[0])
        if g is not None:
            pass
        cp = contour(g, _interior(g, vid), 3)
        verts = cp.walk.vertices()
        assert len(verts) == len(cp.walk)
        # consecutive vertices along the walk are adjacent (closed walk)
        for a, b in zip(verts, verts[1:] + verts[:1]):
            assert b in g.neighbors(a)


def _interior(g, fallback):
    best, bd = fallback, -1
    for v in map(int, g.vertex_ids):
        d = g.rim_dist(v)
        if d > bd:
            best, bd = v, d
    return best


def test_spider_contour_length():
    sp = spider(4, 20)
    cp = contour(sp, 0, 8)
    assert len(cp.walk) == 2 * 4 * 8
    assert len(cp.canonical_occurrence) == 4


def test_horizonless_host_uses_bare_outer_face():
    # ball swallows the whole star: the unbounded region is the outer face alone
    star = PlanarEmbeddedGraph({0: [1, 2], 1: [0], 2: [0]}, (0, 1))
    cp = contour(star, 0, 5)
    assert len(cp.walk) == 4


class TestComplementOracle:
    """Compare against a geometric flood fill over the grid's unit cells.

    Cells of the 21x21 lattice (plus a ring of outside cells) are
    4-connected; a cell is blocked for the flood when all four of its
    corners lie in the ball.  A ball edge is on the oracle contour when
    one of its two incident cells reaches the outside region, and a ball
    vertex when any of its four incident cells does.
    """

    W = 21

    def _cells_reaching_outside(self, in_ball):
        W = self.W
        blocked = set()
        for cx in range(W - 1):
            for cy in range(W - 1):
                corners = [
                    cy * W + cx,
                    cy * W + cx + 1,
                    (cy + 1) * W + cx,
                    (cy + 1) * W + cx + 1,
                ]
                if all(v in in_ball for v in corners):
                    blocked.add((cx, cy))
        reach = set()
        frontier = []
        for cx in range(-1, W):
            for cy in range(-1, W):
                if cx in (-1, W - 1) or cy in (-1, W - 1):
                    if (cx, cy) not in blocked:
                        reach.add((cx, cy))
                        frontier.append((cx, cy))
        while frontier:
            cx, cy = frontier.pop()
            for nx, ny in ((cx + 1, cy), (cx - 1, cy), (cx, cy + 1), (cx, cy - 1)):
                if -1 <= nx < W and -1 <= ny < W and (nx, ny) not in reach and (
                    nx,
                    ny,
                ) not in blocked:
                    reach.add((nx, ny))
                    frontier.append((nx, ny))
        return reach

    @pytest.mark.parametrize("r", [1, 2, 3, 5, 8])
    def test_grid_contour_support_matches_flood(self, r):
        W = self.W
        g = grid(W, W)
        c = (W // 2) * W + W // 2
        in_ball = ball(g, c, r)
        reach = self._cells_reaching_outside(in_ball)
        expected = set()
        for v in in_ball:
            vx, vy = v % W, v // W
            cells = [(vx - 1, vy - 1), (vx, vy - 1), (vx - 1, vy), (vx, vy)]
            if any(cell in reach for cell in cells):
                expected.add(v)
        cp = contour(g, c, r)
        assert cp.support == expected

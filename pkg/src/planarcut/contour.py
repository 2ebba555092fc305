"""Contours of balls: the boundary walk facing the unbounded complement.

The complement of a ball ``B(v, r)`` (as a closed point set: vertices plus
edges with both endpoints inside) decomposes into regions.  Two faces of
the host belong to the same region when they share an edge that is not in
the induced ball or a vertex outside the ball; the region containing the
designated outer face plays the role of the unbounded component.  The
contour is the closed boundary walk of that region along induced-ball
edges.

Because the ball is connected its contour is a single closed walk.  A
vertex may appear on the walk several times (cut vertices, trees); every
vertex at distance exactly ``r`` is assigned one canonical occurrence,
the first in walk order starting from the smallest boundary dart.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import connected_components

from .embedding import PlanarEmbeddedGraph, Walk
from .errors import PreconditionError


@dataclass(frozen=True)
class ContourParametrization:
    """Closed boundary walk of ``B(center, radius)`` with canonical occurrences.

    ``canonical_occurrence`` maps each distance-``radius`` vertex on the
    walk to one position; position ``i`` is the origin of dart ``i``.
    """

    graph: PlanarEmbeddedGraph
    center: int
    radius: int
    walk: Walk
    canonical_occurrence: dict[int, int]
    support: frozenset[int]
    _vertices: tuple[int, ...] = field(repr=False, default=())

    def __len__(self) -> int:
        return len(self.walk)

    def vertex_at(self, pos: int) -> int:
        return self._vertices[pos % len(self._vertices)]

    def positions(self) -> tuple[int, ...]:
        return self._vertices


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def contour(g: PlanarEmbeddedGraph, v: int, r: int) -> ContourParametrization:
    """Contour of ``B(v, r)``: the closed walk bounding the outer region."""
    if r < 0:
        raise PreconditionError(f"radius must be nonnegative, got {r}")
    vi = g.idx(v)
    dist = g.dist_array(v, limit=r)
    in_b = np.isfinite(dist)
    if r == 0:
        return ContourParametrization(
            g, int(v), 0, Walk(g, (), closed=True), {int(v): 0}, frozenset([int(v)]), ()
        )

    nbr, origin, face_id = g._nbr, g._origin, g._face_id
    n = g.n_vertices

    # complement components over vertices outside the ball
    outside = np.flatnonzero(~in_b)
    comp_of = np.full(n, -1, dtype=np.int64)
    n_comp = 0
    if len(outside):
        sub = g.csr()[outside][:, outside]
        n_comp, labels = connected_components(sub, directed=False)
        comp_of[outside] = labels

    # faces joined to the complement component of each outside head
    dartsel = np.flatnonzero(~in_b[nbr])
    u_root = None
    dsu = _DSU(n_comp)
    face_comp = np.full(g.n_darts, -1, dtype=np.int64)  # first comp per face label
    if len(dartsel):
        f = face_id[dartsel].astype(np.int64)
        c = comp_of[nbr[dartsel]]
        codes = np.unique(f * max(n_comp, 1) + c)
        fu, cu = codes // max(n_comp, 1), codes % max(n_comp, 1)
        same_face = fu[1:] == fu[:-1]
        for i in np.flatnonzero(same_face):
            dsu.union(int(cu[i]), int(cu[i + 1]))
        first = np.ones(len(fu), dtype=bool)
        first[1:] = ~same_face
        face_comp[fu[first]] = cu[first]
        if face_comp[g.outer_face] >= 0:
            u_root = dsu.find(int(face_comp[g.outer_face]))

    in_ball_edge = in_b[origin] & in_b[nbr]
    cand = np.flatnonzero(in_ball_edge)
    if u_root is not None:
        cc = face_comp[face_id[cand].astype(np.int64)]
        keep = [i for i, x in enumerate(cc) if x >= 0 and dsu.find(int(x)) == u_root]
        boundary_darts = cand[keep]
    else:
        # ball swallows every vertex around the outer face: the bare outer
        # face itself is the unbounded region
        boundary_darts = cand[face_id[cand] == g.outer_face]
    if len(boundary_darts) == 0:
        raise PreconditionError(
            f"ball B({v}, {r}) has no boundary toward the outer region"
        )

    walk_darts = _trace(g, in_b, boundary_darts)
    verts = tuple(int(g._ids[origin[d]]) for d in walk_darts)
    canonical: dict[int, int] = {}
    for pos, d in enumerate(walk_darts):
        oi = origin[d]
        if dist[oi] == r:
            canonical.setdefault(int(g._ids[oi]), pos)
    return ContourParametrization(
        g,
        int(v),
        int(r),
        Walk(g, walk_darts, closed=True),
        canonical,
        frozenset(verts),
        verts,
    )


def _trace(g: PlanarEmbeddedGraph, in_b: np.ndarray, boundary_darts: np.ndarray):
    """Trace the closed boundary walk, sweeping past region-interior edges."""
    nbr, twin, rot_next = g._nbr, g._twin, g._rot_next
    remaining = set(int(d) for d in boundary_darts)
    start = min(remaining)
    walk = [start]
    remaining.discard(start)
    d = start
    while True:
        x = rot_next[twin[d]]
        while not in_b[nbr[x]]:
            x = rot_next[x]
        if x == start:
            break
        if int(x) not in remaining:
            raise AssertionError(
                "contour trace left the boundary dart set; embedding is inconsistent"
            )
        walk.append(int(x))
        remaining.discard(int(x))
        d = x
    if remaining:
        raise AssertionError(
            f"contour boundary is not a single closed walk ({len(remaining)} darts unvisited)"
        )
    return tuple(walk)

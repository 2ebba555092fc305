"""Winding-number parity of closed walks around a vertex, mod 2.

Parity is computed purely combinatorially against a fixed reference ray
from the anchor vertex to the outer face: crossings are (a) traversals of
edges the ray crosses and (b) passages of the walk through the anchor
whose corner sector contains the ray's start corner.

A corner at ``v`` is identified by a dart ``x`` with origin ``v`` and
means the angular sector between ``x`` and ``rotation_next(x)``.  A
passage arriving on ``d_in`` and leaving on ``d_out`` is deformed off the
vertex across the counterclockwise sector from ``twin(d_in)`` to
``d_out``; it crosses the ray exactly when the start corner lies in that
sector.  A backtracking passage (``d_out == twin(d_in)``) sweeps nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .contour import ContourParametrization
from .embedding import PlanarEmbeddedGraph, Walk
from .errors import PreconditionError


@dataclass(frozen=True)
class DualRay:
    """A simple curve from the anchor through face interiors to the outer face.

    ``start_corner`` is a dart with origin ``anchor``; ``crossed_edges``
    are the canonical edge ids crossed transversally, in order.  The face
    sequence is simple by construction (strictly decreasing distance to
    the outer face).
    """

    graph: PlanarEmbeddedGraph
    anchor: int
    start_corner: int
    crossed_edges: tuple[int, ...]
    face_path: tuple[int, ...]


def _face_structures(g: PlanarEmbeddedGraph):
    """Compact face indexing, adjacency and BFS distance to the outer face."""
    cached = g._cache.get("face_bfs")
    if cached is not None:
        return cached
    labels = g.face_labels()
    compact = {int(l): i for i, l in enumerate(labels)}
    nf = len(labels)
    fid = g._face_id.astype(np.int64)
    comp_arr = np.zeros(g.n_darts, dtype=np.int64)
    comp_arr[labels] = np.arange(nf)
    dart_face = comp_arr[fid]  # compact face index per dart
    rows = dart_face
    cols = dart_face[g._twin]
    keep = rows != cols
    adj = csr_matrix(
        (np.ones(int(keep.sum()), dtype=np.int8), (rows[keep], cols[keep])),
        shape=(nf, nf),
    )
    fdist = dijkstra(adj, directed=False, indices=compact[g.outer_face], unweighted=True)
    order = np.argsort(dart_face, kind="stable")
    starts = np.searchsorted(dart_face[order], np.arange(nf))
    ends = np.searchsorted(dart_face[order], np.arange(nf) + 1)
    out = (compact, dart_face, fdist, order, starts, ends)
    g._cache["face_bfs"] = out
    return out


def corner_face(g: PlanarEmbeddedGraph, x: int) -> int:
    """Face label owning the corner between dart ``x`` and its rotation-next."""
    return int(g._face_id[g._twin[x]])


def dual_ray(g: PlanarEmbeddedGraph, v: int) -> DualRay:
    """Shortest dual ray from a corner at ``v`` to the outer face.

    Deterministic: among corners at ``v`` whose face is closest to the
    outer face, the smallest dart id wins; each step crosses the smallest
    dart whose opposite face is one step closer.
    """
    vi = g.idx(v)
    if vi in set(int(i) for i in g.rim_index_array()):
        raise PreconditionError(f"anchor {v} lies on the host rim (horizon)")
    compact, dart_face, fdist, order, starts, ends = _face_structures(g)

    lo, hi = g._offsets[vi], g._offsets[vi + 1]
    best = None
    for x in range(lo, hi):
        fci = int(dart_face[g._twin[x]])
        key = (fdist[fci], x)
        if best is None or key < best[0]:
            best = (key, x, fci)
    _, x0, fci = best

    crossed: list[int] = []
    faces: list[int] = [int(g.face_labels()[fci])]
    cur = fci
    while fdist[cur] > 0:
        target = fdist[cur] - 1
        nxt = None
        for pos in range(starts[cur], ends[cur]):
            d = int(order[pos])
            other = int(dart_face[g._twin[d]])
            if fdist[other] == target:
                nxt = (d, other)
                break
        if nxt is None:  # pragma: no cover - BFS guarantees a descent
            raise AssertionError("dual BFS descent failed")
        d, cur = nxt
        crossed.append(g.edge_key(d))
        faces.append(int(g.face_labels()[cur]))
    return DualRay(g, int(v), int(x0), tuple(crossed), tuple(faces))


def _sector_contains(g: PlanarEmbeddedGraph, d_in: int, d_out: int, corner: int) -> int:
    x = int(g._twin[d_in])
    d_out = int(d_out)
    while x != d_out:
        if x == corner:
            return 1
        x = int(g._rot_next[x])
    return 0


def winding_parity(g: PlanarEmbeddedGraph, walk: Walk, ray: DualRay) -> int:
    """Winding parity of a closed walk around the ray's anchor."""
    if not walk.closed:
        raise PreconditionError("winding parity requires a closed walk")
    darts = walk.darts
    if not darts:
        return 0
    crossed = set(ray.crossed_edges)
    count = 0
    for d in darts:
        if g.edge_key(d) in crossed:
            count += 1
    ai = g.idx(ray.anchor)
    m = len(darts)
    origin = g._origin
    for i, d in enumerate(darts):
        if origin[d] == ai:
            count += _sector_contains(g, darts[(i - 1) % m], d, ray.start_corner)
    return count & 1


def path_crossings(g: PlanarEmbeddedGraph, vertices, ray: DualRay) -> int:
    """Ray crossings of an open vertex path that avoids the anchor."""
    if ray.anchor in vertices:
        raise PreconditionError("path passes through the winding anchor")
    crossed = set(ray.crossed_edges)
    count = 0
    for u, w in zip(vertices, vertices[1:]):
        d = g.dart(u, w)
        if d is None:
            raise PreconditionError(f"no edge {u} -> {w} in the host")
        if g.edge_key(d) in crossed:
            count += 1
    return count


def splice_parity_check(
    g: PlanarEmbeddedGraph, arc1: Walk, arc2: Walk, delta: Walk, ray: DualRay
) -> tuple[int, int]:
    """Parities of ``arc1 + reversed(delta)`` and ``delta + arc2``.

    ``arc1`` runs A to B, ``arc2`` B to A (their concatenation closed) and
    ``delta`` A to B.  The two parities sum, mod 2, to the parity of
    ``arc1 + arc2``.
    """
    if not (arc1.darts and arc2.darts):
        raise PreconditionError("arcs must be nonempty")
    a1s, a1e = _endpoints(g, arc1)
    a2s, a2e = _endpoints(g, arc2)
    if (a1e, a1s) != (a2s, a2e):
        raise PreconditionError("arcs do not share endpoints head-to-tail")
    if delta.darts:
        ds, de = _endpoints(g, delta)
        if (ds, de) != (a1s, a1e):
            raise PreconditionError("delta endpoints do not match the arcs")
        p1 = winding_parity(g, Walk(g, arc1.darts + delta.reversed().darts, True), ray)
        p2 = winding_parity(g, Walk(g, delta.darts + arc2.darts, True), ray)
    else:
        if a1s != a1e:
            raise PreconditionError("empty delta needs arcs with equal endpoints")
        p1 = winding_parity(g, Walk(g, arc1.darts, True), ray)
        p2 = winding_parity(g, Walk(g, arc2.darts, True), ray)
    return p1, p2


def _endpoints(g: PlanarEmbeddedGraph, w: Walk) -> tuple[int, int]:
    return g.dart_origin(w.darts[0]), g.dart_head(w.darts[-1])


class ContourCrossings:
    """Prefix-summed ray crossings along a contour walk.

    Supports O(1) queries for the crossing count of any cyclic sub-arc
    (edge traversals plus interior anchor passages) and for the number of
    canonical occurrences on a closed position interval.
    """

    def __init__(self, cp: ContourParametrization, ray: DualRay):
        g = cp.graph
        self.contour = cp
        self.ray = ray
        darts = cp.walk.darts
        m = len(darts)
        self.length = m
        crossed = set(ray.crossed_edges)
        cross = np.zeros(m, dtype=np.int64)
        passage = np.zeros(m, dtype=np.int64)
        ai = g.idx(ray.anchor) if g.has_vertex(ray.anchor) else -1
        origin = g._origin
        for i, d in enumerate(darts):
            if g.edge_key(d) in crossed:
                cross[i] = 1
            if origin[d] == ai:
                passage[i] = _sector_contains(g, darts[(i - 1) % m], d, ray.start_corner)
        occ = np.zeros(m, dtype=np.int64)
        for pos in cp.canonical_occurrence.values():
            occ[pos] = 1
        self._pc = np.concatenate([[0], np.cumsum(np.tile(cross, 2))])
        self._pp = np.concatenate([[0], np.cumsum(np.tile(passage, 2))])
        self._po = np.concatenate([[0], np.cumsum(np.tile(occ, 2))])

    def arc_crossings(self, p: int, q: int) -> int:
        """Crossings of the walk arc from position p to q (q may wrap, q > p)."""
        if not p <= q <= p + self.length:
            raise ValueError("arc must advance at most one full turn")
        cross = self._pc[q] - self._pc[p]
        passages = self._pp[q] - self._pp[p + 1] if q > p else 0
        return int(cross + passages)

    def weight(self, p: int, q: int) -> int:
        """Canonical occurrences on the closed position interval [p, q]."""
        if not p <= q <= p + self.length:
            raise ValueError("arc must advance at most one full turn")
        return int(self._po[q + 1] - self._po[p])

    def full_parity(self) -> int:
        return int(self._pc[self.length] + self._pp[self.length]) & 1

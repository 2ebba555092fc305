"""Planar embedded graphs as rotation systems, with distances and boundaries.

A host graph is a set of darts (directed half-edges).  Dart ``d`` is the
slot index of ``(origin, neighbor)`` in the concatenated rotation lists,
so ``twin``, ``rotation-next`` and face orbits are plain integer arrays
and everything heavy (BFS, components) runs on a scipy CSR matrix.

Faces are orbits of ``successor(d) = rotation_next(twin(d))`` with
rotations stored counterclockwise; a face is identified by the smallest
dart id on its orbit.  Instances are immutable after construction and
safe for unsynchronized concurrent reads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

from .errors import GraphFormatError, PreconditionError

_MAX_LABEL_ROUNDS = 64  # pointer doubling; supports orbits up to 2**64 darts


class PlanarEmbeddedGraph:
    """Immutable planar embedding given by counterclockwise rotations.

    Parameters
    ----------
    rotations:
        Mapping from vertex id to the cyclic counterclockwise sequence of
        neighbor ids.  Vertex ids are arbitrary integers; the graph must
        be simple (no loops or parallel edges) and connected.
    outer_face_dart:
        ``(origin, head)`` pair designating the unbounded face as the face
        orbit containing that dart.  If ``None``, the unique longest face
        orbit is designated; a tie is an error.

    Construction validates the rotation system (twin involution, Euler's
    formula ``|V| - |E| + |F| = 2``) and fails loudly otherwise.
    """

    def __init__(
        self,
        rotations: Mapping[int, Sequence[int]],
        outer_face_dart: tuple[int, int] | None = None,
    ):
        if not rotations:
            raise GraphFormatError("graph has no vertices", "rotations")
        ids = np.array(sorted(rotations), dtype=np.int64)
        index = {int(v): i for i, v in enumerate(ids)}
        n = len(ids)

        degs = np.empty(n, dtype=np.int64)
        for v, i in index.items():
            degs[i] = len(rotations[v])
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degs, out=offsets[1:])
        n_darts = int(offsets[-1])
        if n_darts == 0:
            raise GraphFormatError("graph has no edges", "rotations")

        nbr = np.empty(n_darts, dtype=np.int32)
        for v, i in index.items():
            lo = offsets[i]
            row = rotations[v]
            seen = set()
            for k, w in enumerate(row):
                j = index.get(int(w))
                if j is None:
                    raise GraphFormatError(
                        f"neighbor {w} is not a vertex", f"rotations.{v}[{k}]"
                    )
                if j == i:
                    raise GraphFormatError(f"self-loop at {v}", f"rotations.{v}[{k}]")
                if j in seen:
                    raise GraphFormatError(
                        f"duplicate neighbor {w}", f"rotations.{v}[{k}]"
                    )
                seen.add(j)
                nbr[lo + k] = j
        if outer_face_dart is not None:
            o, h = outer_face_dart
            if int(o) not in index or int(h) not in index:
                raise GraphFormatError(
                    f"[{o}, {h}] is not a dart of the graph", "outer_face_dart"
                )
            outer_face_dart = (index[int(o)], index[int(h)])
        self._init_from_arrays(ids, index, offsets, nbr, outer_face_dart)

    @classmethod
    def from_arrays(
        cls,
        offsets: np.ndarray,
        nbr: np.ndarray,
        outer_face_dart: tuple[int, int] | None = None,
    ) -> "PlanarEmbeddedGraph":
        """Vectorized construction path: vertex ids are ``0..n-1``.

        ``offsets``/``nbr`` are the CSR-style concatenated rotation lists
        (counterclockwise per vertex).  ``outer_face_dart`` is given in
        vertex indexes.  Meant for generators; validation is the same as
        the mapping constructor but error messages are coarser.
        """
        self = object.__new__(cls)
        offsets = np.asarray(offsets, dtype=np.int64)
        nbr = np.asarray(nbr, dtype=np.int32)
        n = len(offsets) - 1
        ids = np.arange(n, dtype=np.int64)
        origin = np.repeat(np.arange(n, dtype=np.int32), np.diff(offsets))
        if (nbr == origin).any():
            raise GraphFormatError("self-loop in rotations")
        codes = origin.astype(np.int64) * n + nbr
        if len(np.unique(codes)) != len(codes):
            raise GraphFormatError("duplicate neighbor in a rotation list")
        self._init_from_arrays(ids, None, offsets, nbr, outer_face_dart)
        return self

    def _init_from_arrays(self, ids, index, offsets, nbr, outer_face_dart):
        n = len(ids)
        n_darts = len(nbr)
        self._ids = ids
        self._index = index  # None when ids are the contiguous range 0..n-1
        self._offsets = offsets
        self._nbr = nbr
        self._origin = np.repeat(np.arange(n, dtype=np.int32), np.diff(offsets))
        self.n_vertices = n
        self.n_darts = n_darts
        self.n_edges = n_darts // 2
        if n_darts % 2:
            raise GraphFormatError("odd number of darts; rotations not symmetric")
        if (np.diff(offsets) == 0).any():
            raise GraphFormatError("isolated vertex (empty rotation list)")

        self._twin = self._pair_twins()
        self._rot_next = self._build_rot_next()
        self._csr = csr_matrix(
            (np.ones(n_darts, dtype=np.int8), nbr.astype(np.int64), offsets),
            shape=(n, n),
        )
        ncomp, _ = connected_components(self._csr, directed=False)
        if ncomp != 1:
            raise GraphFormatError(f"host must be connected ({ncomp} components)")

        self._face_id = self._label_faces()
        roots = np.flatnonzero(self._face_id == np.arange(n_darts, dtype=np.int32))
        self.n_faces = len(roots)
        euler = self.n_vertices - self.n_edges + self.n_faces
        if euler != 2:
            raise GraphFormatError(
                f"rotation system is not planar: |V|-|E|+|F| = "
                f"{self.n_vertices}-{self.n_edges}+{self.n_faces} = {euler}, expected 2"
            )

        self.outer_face = self._resolve_outer_face(outer_face_dart, roots)
        self._rim_idx = self._compute_rim()
        self._cache: dict = {}

    # -- construction helpers -------------------------------------------------

    def _pair_twins(self) -> np.ndarray:
        u, w = self._origin.astype(np.int64), self._nbr.astype(np.int64)
        lo, hi = np.minimum(u, w), np.maximum(u, w)
        order = np.lexsort((u > w, hi, lo))
        s_lo, s_hi = lo[order], hi[order]
        pairs_ok = (
            np.array_equal(s_lo[0::2], s_lo[1::2])
            and np.array_equal(s_hi[0::2], s_hi[1::2])
        )
        if not pairs_ok:
            raise GraphFormatError(
                "rotations are not symmetric: some edge lacks its reversal"
            )
        twin = np.empty(self.n_darts, dtype=np.int32)
        twin[order[0::2]] = order[1::2]
        twin[order[1::2]] = order[0::2]
        return twin

    def _build_rot_next(self) -> np.ndarray:
        rot = np.arange(1, self.n_darts + 1, dtype=np.int32)
        ends = self._offsets[1:] - 1
        rot[ends] = self._offsets[:-1]
        return rot

    def _label_faces(self) -> np.ndarray:
        succ = self._rot_next[self._twin]
        label = np.arange(self.n_darts, dtype=np.int32)
        jump = succ.copy()
        for _ in range(_MAX_LABEL_ROUNDS):
            new = np.minimum(label, label[jump])
            if np.array_equal(new, label):
                break
            label = new
            jump = jump[jump]
        self._succ = succ
        return label

    def _resolve_outer_face(
        self, outer_face_dart: tuple[int, int] | None, roots: np.ndarray
    ) -> int:
        if outer_face_dart is None:
            lengths = np.bincount(self._face_id, minlength=self.n_darts)[roots]
            top = roots[lengths == lengths.max()]
            if len(top) != 1:
                raise GraphFormatError(
                    "outer face is ambiguous (longest face orbit is not unique); "
                    "pass outer_face_dart explicitly"
                )
            return int(top[0])
        i, j = outer_face_dart  # vertex indexes at this point
        d = self._dart_by_idx(i, j)
        if d is None:
            raise GraphFormatError(
                f"[{i}, {j}] is not a dart of the graph", "outer_face_dart"
            )
        return int(self._face_id[d])

    def _dart_by_idx(self, i: int, j: int) -> int | None:
        lo, hi = self._offsets[i], self._offsets[i + 1]
        for d in range(lo, hi):
            if self._nbr[d] == j:
                return d
        return None

    def _compute_rim(self) -> np.ndarray:
        """Vertices at which the finite host was truncated.

        With at least two faces these are the vertices incident to the
        designated outer face.  A tree has a single face that touches
        every vertex, so its truncation points are its leaves instead.
        """
        if self.n_faces == 1:
            degs = np.diff(self._offsets)
            return np.flatnonzero(degs == 1).astype(np.int64)
        mask = self._face_id == self.outer_face
        return np.unique(self._origin[mask]).astype(np.int64)

    # -- basic accessors -------------------------------------------------------

    @property
    def vertex_ids(self) -> np.ndarray:
        return self._ids

    def has_vertex(self, v: int) -> bool:
        v = int(v)
        if self._index is None:
            return 0 <= v < self.n_vertices
        return v in self._index

    def idx(self, v: int) -> int:
        """Internal index of vertex id ``v``."""
        v = int(v)
        if self._index is None:
            if 0 <= v < self.n_vertices:
                return v
            raise PreconditionError(f"unknown vertex {v}")
        try:
            return self._index[v]
        except KeyError:
            raise PreconditionError(f"unknown vertex {v}") from None

    def vid(self, i: int) -> int:
        return int(self._ids[i])

    def degree(self, v: int) -> int:
        i = self.idx(v)
        return int(self._offsets[i + 1] - self._offsets[i])

    def neighbors(self, v: int) -> list[int]:
        """Neighbor ids of ``v`` in counterclockwise rotation order."""
        i = self.idx(v)
        return [int(self._ids[j]) for j in self._nbr[self._offsets[i] : self._offsets[i + 1]]]

    def dart(self, origin: int, head: int) -> int | None:
        """Dart id for the directed edge ``origin -> head``, or ``None``."""
        i, j = self.idx(origin), self.idx(head)
        lo, hi = self._offsets[i], self._offsets[i + 1]
        for d in range(lo, hi):
            if self._nbr[d] == j:
                return d
        return None

    def dart_origin(self, d: int) -> int:
        return int(self._ids[self._origin[d]])

    def dart_head(self, d: int) -> int:
        return int(self._ids[self._nbr[d]])

    def twin(self, d: int) -> int:
        return int(self._twin[d])

    def rot_next(self, d: int) -> int:
        return int(self._rot_next[d])

    def face_of_dart(self, d: int) -> int:
        return int(self._face_id[d])

    def edge_key(self, d: int) -> int:
        """Canonical undirected edge id: the smaller dart of the twin pair."""
        t = self._twin[d]
        return int(d if d < t else t)

    @property
    def rim_vertices(self) -> frozenset[int]:
        """Truncation rim of the finite host; see ``_compute_rim``."""
        return frozenset(int(self._ids[i]) for i in self._rim_idx)

    def rim_index_array(self) -> np.ndarray:
        return self._rim_idx

    # -- distances -------------------------------------------------------------

    def dist_array(self, v: int, limit: float = np.inf) -> np.ndarray:
        """Hop distances from ``v`` as a float array indexed by vertex index.

        Entries beyond ``limit`` are ``inf``.  Exact and deterministic.
        """
        return dijkstra(
            self._csr, directed=False, indices=self.idx(v), unweighted=True, limit=limit
        )

    def multi_source_dist(self, sources_idx: Sequence[int], limit: float = np.inf) -> np.ndarray:
        """Hop distance to the nearest of ``sources_idx``, per vertex index.

        Runs one BFS from a virtual super-source so the cost is a single
        sweep regardless of how many sources there are.
        """
        src = np.asarray(list(sources_idx), dtype=np.int64)
        if len(src) == 0:
            return np.full(self.n_vertices, np.inf)
        coo = self._csr.tocoo()
        rows = np.concatenate([coo.row + 1, np.zeros(len(src), dtype=np.int64)])
        cols = np.concatenate([coo.col + 1, src + 1])
        data = np.ones(len(rows), dtype=np.int8)
        big = csr_matrix((data, (rows, cols)), shape=(self.n_vertices + 1,) * 2)
        lim = limit if limit == np.inf else limit + 1
        d = dijkstra(big, directed=True, indices=0, unweighted=True, limit=lim)
        return d[1:] - 1.0

    def rim_dist(self, v: int) -> int:
        """Graph distance from ``v`` to the nearest rim vertex."""
        key = "rim_dist"
        if key not in self._cache:
            self._cache[key] = self.multi_source_dist(self._rim_idx.tolist())
        d = self._cache[key][self.idx(v)]
        return int(d) if math.isfinite(d) else self.n_vertices

    def horizon_ok(self, v: int, radius: int) -> bool:
        """True iff ``B(v, radius)`` avoids every rim vertex."""
        return self.rim_dist(v) > radius

    def csr(self) -> csr_matrix:
        return self._csr

    # -- faces -----------------------------------------------------------------

    def face_labels(self) -> np.ndarray:
        roots = np.flatnonzero(self._face_id == np.arange(self.n_darts, dtype=np.int32))
        return roots.astype(np.int64)

    def face_orbit(self, label: int) -> tuple[int, ...]:
        """Darts of one face orbit in successor order, starting at its label."""
        out = [int(label)]
        d = int(self._succ[label])
        while d != label:
            out.append(d)
            d = int(self._succ[d])
        return tuple(out)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"PlanarEmbeddedGraph(|V|={self.n_vertices}, |E|={self.n_edges}, "
            f"|F|={self.n_faces})"
        )


@dataclass(frozen=True)
class DistanceField:
    """Hop distances from a center vertex.

    Satisfies ``distance(center) == 0`` and the 1-Lipschitz property along
    edges.  Unreachable-within-limit vertices report ``math.inf``.
    """

    graph: PlanarEmbeddedGraph
    center: int
    _dist: np.ndarray = field(repr=False)

    def distance(self, v: int) -> float:
        d = self._dist[self.graph.idx(v)]
        return int(d) if math.isfinite(d) else math.inf

    def within(self, r: int) -> set[int]:
        idxs = np.flatnonzero(self._dist <= r)
        ids = self.graph.vertex_ids
        return {int(ids[i]) for i in idxs}

    def exactly(self, r: int) -> set[int]:
        idxs = np.flatnonzero(self._dist == r)
        ids = self.graph.vertex_ids
        return {int(ids[i]) for i in idxs}

    def as_dict(self) -> dict[int, int]:
        ids = self.graph.vertex_ids
        return {
            int(ids[i]): int(d) for i, d in enumerate(self._dist) if math.isfinite(d)
        }

    def array(self) -> np.ndarray:
        return self._dist


def bfs_distances(g: PlanarEmbeddedGraph, v: int) -> DistanceField:
    """Exact hop distances from ``v`` to every vertex of the host."""
    return DistanceField(g, int(v), g.dist_array(v))


def ball(g: PlanarEmbeddedGraph, v: int, r: int) -> set[int]:
    """Vertices at distance at most ``r`` from ``v``."""
    if r < 0:
        raise PreconditionError(f"radius must be nonnegative, got {r}")
    return DistanceField(g, int(v), g.dist_array(v, limit=r)).within(r)


def sphere(g: PlanarEmbeddedGraph, v: int, r: int) -> set[int]:
    """Vertices at distance exactly ``r`` from ``v``."""
    if r < 0:
        raise PreconditionError(f"radius must be nonnegative, got {r}")
    return DistanceField(g, int(v), g.dist_array(v, limit=r)).exactly(r)


def boundary(g: PlanarEmbeddedGraph, omega: Iterable[int]) -> set[int]:
    """External vertex boundary: vertices outside ``omega`` adjacent to it."""
    mask = np.zeros(g.n_vertices, dtype=bool)
    for v in omega:
        mask[g.idx(v)] = True
    out = mask[g._origin] & ~mask[g._nbr]
    heads = np.unique(g._nbr[out])
    ids = g.vertex_ids
    return {int(ids[i]) for i in heads}


def faces(g: PlanarEmbeddedGraph) -> list[tuple[int, ...]]:
    """All face orbits as dart tuples, each starting at its smallest dart."""
    return [g.face_orbit(int(lbl)) for lbl in g.face_labels()]


@dataclass(frozen=True)
class Walk:
    """A walk given by consecutive darts; closed walks wrap around.

    Consecutive darts must be head-to-origin incident; a closed walk's
    last head equals its first origin.
    """

    graph: PlanarEmbeddedGraph
    darts: tuple[int, ...]
    closed: bool = False

    def __post_init__(self):
        g = self.graph
        ds = self.darts
        for a, b in zip(ds, ds[1:]):
            if g._nbr[a] != g._origin[b]:
                raise PreconditionError(
                    f"darts {a}->{b} are not head-to-origin incident"
                )
        if self.closed and ds and g._nbr[ds[-1]] != g._origin[ds[0]]:
            raise PreconditionError("closed walk does not return to its start")

    def __len__(self) -> int:
        return len(self.darts)

    def vertices(self) -> list[int]:
        """Vertex sequence along the walk (length+1 entries if open)."""
        if not self.darts:
            return []
        g = self.graph
        out = [g.dart_origin(self.darts[0])]
        out.extend(g.dart_head(d) for d in self.darts)
        if self.closed:
            out.pop()
        return out

    def support(self) -> set[int]:
        return set(self.vertices())

    def reversed(self) -> "Walk":
        g = self.graph
        rev = tuple(int(g._twin[d]) for d in reversed(self.darts))
        return Walk(g, rev, self.closed)

    @staticmethod
    def from_vertices(
        g: PlanarEmbeddedGraph, vertices: Sequence[int], closed: bool = False
    ) -> "Walk":
        seq = list(vertices)
        if closed and len(seq) > 1 and seq[0] == seq[-1]:
            seq.pop()
        pairs = list(zip(seq, seq[1:]))
        if closed and seq:
            pairs.append((seq[-1], seq[0]))
        darts = []
        for u, w in pairs:
            d = g.dart(u, w)
            if d is None:
                raise PreconditionError(f"no edge {u} -> {w} in the host")
            darts.append(d)
        return Walk(g, tuple(darts), closed)

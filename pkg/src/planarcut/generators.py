"""Deterministic planar host generators with counterclockwise rotations.

Families: ``grid`` (w x h square lattice; w=1 or h=1 degenerates to a
path), ``triangular`` (hex-shaped triangular-lattice disk of radius R),
``hexagonal`` (honeycomb patch), ``spider`` (arms paths glued at a
center), ``tree`` (complete b-ary tree) and ``substitution`` (iterated
face refinement; every instance is meant to be measured, never assumed
doubling).

All generators emit canonical vertex ids (row-major or arm-major) so
downstream tie-breaking is reproducible.  ``lattice_layout`` returns the
natural drawing coordinates for families that have them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .embedding import PlanarEmbeddedGraph
from .errors import PreconditionError

FAMILIES = ("grid", "triangular", "hexagonal", "spider", "tree", "substitution")


@dataclass(frozen=True)
class FamilySpec:
    """A generator family with its integer parameters and seed."""

    family: str
    params: dict[str, int] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(
                f"unknown family {self.family!r}; expected one of {FAMILIES}"
            )


def generate(spec: FamilySpec) -> PlanarEmbeddedGraph:
    """Build the host for ``spec``; deterministic in (family, params, seed)."""
    builder = _BUILDERS[spec.family]
    return builder(**_checked_params(spec))


def lattice_layout(spec: FamilySpec) -> dict[int, tuple[float, float]] | None:
    """Drawing coordinates for the generated host, or None for trees."""
    fn = _LAYOUTS.get(spec.family)
    return fn(**_checked_params(spec)) if fn else None


_PARAM_BOUNDS = {
    "grid": {"w": (1, 5000), "h": (1, 5000)},
    "triangular": {"radius": (1, 500)},
    "hexagonal": {"w": (1, 500), "h": (1, 500)},
    "spider": {"arms": (2, 64), "length": (1, 100000)},
    "tree": {"branching": (1, 16), "depth": (1, 20)},
    "substitution": {"rule": (0, 1), "iterations": (1, 8)},
}


def _checked_params(spec: FamilySpec) -> dict[str, int]:
    bounds = _PARAM_BOUNDS[spec.family]
    unknown = set(spec.params) - set(bounds)
    if unknown:
        raise PreconditionError(
            f"unknown parameter(s) {sorted(unknown)} for family {spec.family!r}"
        )
    out = {}
    for name, (lo, hi) in bounds.items():
        if name not in spec.params:
            raise PreconditionError(f"family {spec.family!r} requires parameter {name!r}")
        val = int(spec.params[name])
        if not lo <= val <= hi:
            raise PreconditionError(
                f"parameter {name}={val} out of bounds [{lo}, {hi}] for {spec.family!r}"
            )
        out[name] = val
    if spec.family == "grid" and out["w"] * out["h"] < 2:
        raise PreconditionError("grid needs at least two vertices")
    return out


# -- square grid (vectorized; hosts up to a few million vertices) --------------


def _build_grid(w: int, h: int) -> PlanarEmbeddedGraph:
    n = w * h
    x, y = np.arange(n) % w, np.arange(n) // w
    # counterclockwise neighbor order: E, N, W, S
    shifts = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    vs, ranks, heads = [], [], []
    for rank, (dx, dy) in enumerate(shifts):
        ok = (0 <= x + dx) & (x + dx < w) & (0 <= y + dy) & (y + dy < h)
        vs.append(np.flatnonzero(ok))
        ranks.append(np.full(int(ok.sum()), rank))
        heads.append((x + dx + (y + dy) * w)[ok])
    v = np.concatenate(vs)
    rank = np.concatenate(ranks)
    head = np.concatenate(heads).astype(np.int32)
    order = np.lexsort((rank, v))
    v, head = v[order], head[order]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(v, minlength=n), out=offsets[1:])
    # the face below the bottom-left horizontal (or left vertical) dart is outer
    outer = (0, 1) if w > 1 else (0, w)
    return PlanarEmbeddedGraph.from_arrays(offsets, head, outer)


def _layout_grid(w: int, h: int) -> dict[int, tuple[float, float]]:
    return {y * w + x: (float(x), float(y)) for y in range(h) for x in range(w)}


# -- triangular lattice disk ----------------------------------------------------

_TRI_DIRS = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]  # ccw by angle


def _tri_points(radius: int) -> list[tuple[int, int]]:
    pts = [
        (q, r)
        for r in range(-radius, radius + 1)
        for q in range(-radius, radius + 1)
        if max(abs(q), abs(r), abs(q + r)) <= radius
    ]
    return sorted(pts, key=lambda p: (p[1], p[0]))


def _build_triangular(radius: int) -> PlanarEmbeddedGraph:
    pts = _tri_points(radius)
    index = {p: i for i, p in enumerate(pts)}
    rotations = {}
    for p, i in index.items():
        q, r = p
        row = [index[(q + dq, r + dr)] for dq, dr in _TRI_DIRS if (q + dq, r + dr) in index]
        rotations[i] = row
    return PlanarEmbeddedGraph(rotations, None)


def _layout_triangular(radius: int) -> dict[int, tuple[float, float]]:
    pts = _tri_points(radius)
    return {
        i: (q + r / 2.0, r * math.sqrt(3) / 2.0) for i, (q, r) in enumerate(pts)
    }


# -- honeycomb patch -------------------------------------------------------------


def _hex_coords(w: int, h: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(h + 1) for j in range(w + 1)]


def _hex_xy(i: int, j: int) -> tuple[float, float]:
    return (j * math.sqrt(3) / 2.0, i * 1.5 + ((i + j) % 2) * 0.5)


def _build_hexagonal(w: int, h: int) -> PlanarEmbeddedGraph:
    pts = _hex_coords(w, h)
    index = {p: i for i, p in enumerate(pts)}
    edges = set()
    for (i, j), a in index.items():
        if (i, j + 1) in index:
            edges.add((a, index[(i, j + 1)]))
        if (i + j) % 2 == 0 and (i + 1, j) in index:
            edges.add((a, index[(i + 1, j)]))
    coords = {index[p]: _hex_xy(*p) for p in pts}
    g = _from_coords(coords, edges)
    return g


def _layout_hexagonal(w: int, h: int) -> dict[int, tuple[float, float]]:
    pts = _hex_coords(w, h)
    return {i: _hex_xy(*p) for i, p in enumerate(pts)}


# -- spider and tree --------------------------------------------------------------


def _build_spider(arms: int, length: int) -> PlanarEmbeddedGraph:
    rotations = {0: [1 + k * length for k in range(arms)]}
    for k in range(arms):
        base = 1 + k * length
        for j in range(length):
            v = base + j
            prev = 0 if j == 0 else v - 1
            row = [prev] if j == length - 1 else [prev, v + 1]
            rotations[v] = row
    return PlanarEmbeddedGraph(rotations, (0, 1))


def _build_tree(branching: int, depth: int) -> PlanarEmbeddedGraph:
    rotations: dict[int, list[int]] = {0: []}
    level = [0]
    nxt = 1
    for _ in range(depth):
        new_level = []
        for p in level:
            kids = list(range(nxt, nxt + branching))
            nxt += branching
            rotations[p].extend(kids)
            for c in kids:
                rotations[c] = [p]
            new_level.extend(kids)
        level = new_level
    return PlanarEmbeddedGraph(rotations, (0, 1))


# -- substitution (iterated face refinement) --------------------------------------

# rule 0: quadrilateral refinement (each square face into four squares)
# rule 1: triangle midpoint refinement (each triangle into four triangles)


def _build_substitution(rule: int, iterations: int) -> PlanarEmbeddedGraph:
    if rule == 0:
        side = 2**iterations + 1
        return _build_grid(side, side)
    # triangle refinement on exact rational coordinates
    a, b, c = (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (
        Fraction(1, 2),
        Fraction(1),
    )
    tris = [(a, b, c)]
    for _ in range(iterations):
        nxt = []
        for p, q, r in tris:
            pq, qr, rp = _mid(p, q), _mid(q, r), _mid(r, p)
            nxt += [(p, pq, rp), (pq, q, qr), (rp, qr, r), (pq, qr, rp)]
        tris = nxt
    pts = sorted({p for t in tris for p in t}, key=lambda p: (p[1], p[0]))
    index = {p: i for i, p in enumerate(pts)}
    edges = set()
    for p, q, r in tris:
        for u, w in ((p, q), (q, r), (r, p)):
            edges.add((index[u], index[w]))
    coords = {
        index[p]: (float(p[0]), float(p[1]) * math.sqrt(3) / 2.0) for p in pts
    }
    return _from_coords(coords, edges)


def _mid(p, q):
    return ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)


def _layout_substitution(rule: int, iterations: int):
    if rule == 0:
        side = 2**iterations + 1
        return _layout_grid(side, side)
    return None  # recomputable, but the renderer's generic layout suffices


# -- shared helpers ----------------------------------------------------------------


def _from_coords(coords: dict[int, tuple[float, float]], edges) -> PlanarEmbeddedGraph:
    """Rotation system from straight-line coordinates (angle-sorted, ccw)."""
    adj: dict[int, list[int]] = {v: [] for v in coords}
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    rotations = {}
    for v, nbrs in adj.items():
        vx, vy = coords[v]
        rotations[v] = sorted(
            set(nbrs), key=lambda w: math.atan2(coords[w][1] - vy, coords[w][0] - vx)
        )
    return PlanarEmbeddedGraph(rotations, None)


_BUILDERS = {
    "grid": _build_grid,
    "triangular": _build_triangular,
    "hexagonal": _build_hexagonal,
    "spider": _build_spider,
    "tree": _build_tree,
    "substitution": _build_substitution,
}

_LAYOUTS = {
    "grid": _layout_grid,
    "triangular": _layout_triangular,
    "hexagonal": _layout_hexagonal,
    "substitution": _layout_substitution,
}


def grid(w: int, h: int) -> PlanarEmbeddedGraph:
    return generate(FamilySpec("grid", {"w": w, "h": h}))


def triangular_disk(radius: int) -> PlanarEmbeddedGraph:
    return generate(FamilySpec("triangular", {"radius": radius}))


def hexagonal_patch(w: int, h: int) -> PlanarEmbeddedGraph:
    return generate(FamilySpec("hexagonal", {"w": w, "h": h}))


def spider(arms: int, length: int) -> PlanarEmbeddedGraph:
    return generate(FamilySpec("spider", {"arms": arms, "length": length}))


def tree(branching: int, depth: int) -> PlanarEmbeddedGraph:
    return generate(FamilySpec("tree", {"branching": branching, "depth": depth}))

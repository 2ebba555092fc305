"""Growth measurement, isoperimetric profiles, and independent cut oracles.

Everything here is read-only over immutable hosts.  Doubling and growth
estimates exclude any (center, radius) pair whose ball reaches the host
rim, so a finite window never picks up truncation artifacts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components, maximum_flow

from .embedding import PlanarEmbeddedGraph, boundary
from .errors import PreconditionError

DOUBLING_BUDGET = 10**6
BRUTE_CAP = 18


@dataclass(frozen=True)
class DoublingEstimate:
    """Measured doubling ratio: max of V(a, 2n) / V(b, n) over the window."""

    c_hat: float
    samples: tuple[tuple[int, int, int, float], ...]  # (a, b, n, ratio)
    radius_window: tuple[int, int]


@dataclass(frozen=True)
class GrowthFit:
    d_hat: float
    residual: float
    radii: tuple[int, ...]
    volumes: tuple[int, ...]


@dataclass(frozen=True)
class ProfileTable:
    """Isoperimetric profile rows: (n, value, phi(n) or None, value/phi or None)."""

    mode: str  # "exact_bruteforce" | "constructed_upper"
    entries: tuple[tuple[int, int, int | None, float | None], ...]


@dataclass(frozen=True)
class MinCutResult:
    cut: frozenset[int]
    size: int
    enclosed: frozenset[int]
    verified: bool


def _volume_rows(g: PlanarEmbeddedGraph, center_idx: int, up_to: int) -> np.ndarray:
    """Cumulative ball sizes V(0..up_to) around one center."""
    d = g.dist_array(g.vid(center_idx), limit=up_to)
    finite = d[np.isfinite(d)].astype(np.int64)
    counts = np.bincount(finite, minlength=up_to + 1)
    return np.cumsum(counts)


def doubling_constant(
    g: PlanarEmbeddedGraph,
    centers=None,
    radii=None,
    budget: int = DOUBLING_BUDGET,
    seed: int = 0,
) -> DoublingEstimate:
    """Largest observed V(a, 2n) / V(b, n) over valid centers and radii.

    A (center, n) pair participates only when B(center, 2n) avoids the
    rim.  With no arguments, up to 32 centers are drawn by a seeded
    deterministic sampler and the radius window is the largest valid one.
    Adding centers can only increase the estimate.
    """
    g.rim_dist(g.vid(0))  # ensure the rim-distance field is cached
    rim_d = g._cache["rim_dist"]
    if centers is None:
        rng = np.random.default_rng(seed)
        k = min(32, g.n_vertices)
        pick = np.sort(rng.choice(g.n_vertices, size=k, replace=False))
        centers = [g.vid(int(i)) for i in pick]
    centers = sorted(int(c) for c in centers)
    cidx = [g.idx(c) for c in centers]

    if radii is None:
        max_n = int(max((rim_d[i] - 1) // 2 for i in cidx))
        max_n = min(max_n, 64)
        if max_n < 1:
            raise PreconditionError("no horizon-valid radius for any center")
        radii = list(range(1, max_n + 1))
    radii = sorted(set(int(r) for r in radii))
    if len(centers) * len(radii) > budget:
        rng = np.random.default_rng(seed)
        keep = np.sort(
            rng.choice(len(centers), size=max(1, budget // len(radii)), replace=False)
        )
        centers = [centers[int(i)] for i in keep]
        cidx = [g.idx(c) for c in centers]

    up_to = 2 * max(radii)
    vols = {c: _volume_rows(g, i, up_to) for c, i in zip(centers, cidx)}
    samples = []
    c_hat = 0.0
    valid_ns = []
    for nn in radii:
        ok = [c for c, i in zip(centers, cidx) if rim_d[i] > 2 * nn]
        if not ok:
            continue
        valid_ns.append(nn)
        big = [(int(vols[c][2 * nn]), c) for c in ok]
        small = [(int(vols[c][nn]), c) for c in ok]
        v2, a = max(big, key=lambda t: (t[0], -t[1]))
        v1, b = min(small)
        ratio = v2 / v1
        samples.append((a, b, nn, ratio))
        c_hat = max(c_hat, ratio)
    if not valid_ns:
        raise PreconditionError("no horizon-valid radius for the given centers")
    return DoublingEstimate(c_hat, tuple(samples), (min(valid_ns), max(valid_ns)))


def fit_power_law(ns, vols) -> tuple[float, float]:
    """Least-squares slope of log(vol) against log(n), with max residual."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(vols, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.max(np.abs(y - (slope * x + intercept))))
    return float(slope), residual


def growth_exponent(g: PlanarEmbeddedGraph, v: int, radii) -> GrowthFit:
    """Power-law exponent of the volume function at ``v`` over valid radii."""
    rd = g.rim_dist(v)
    valid = sorted({int(r) for r in radii if 1 <= int(r) < rd})
    if len(valid) < 4:
        raise PreconditionError(
            f"need at least 4 distinct horizon-valid radii, have {len(valid)}"
        )
    vols_all = _volume_rows(g, g.idx(v), max(valid))
    vols = [int(vols_all[r]) for r in valid]
    d_hat, residual = fit_power_law(valid, vols)
    return GrowthFit(d_hat, residual, tuple(valid), tuple(vols))


def phi(g: PlanarEmbeddedGraph, v: int, n: int) -> int:
    """Least radius k with V(v, k) >= n, within the horizon."""
    if n < 1:
        raise PreconditionError(f"phi is defined for n >= 1, got {n}")
    kmax = g.rim_dist(v) - 1
    vols = _volume_rows(g, g.idx(v), max(kmax, 0))
    hit = np.flatnonzero(vols >= n)
    if len(hit) == 0 or hit[0] > kmax:
        raise PreconditionError(
            f"V({v}, k) never reaches {n} within the horizon (k <= {kmax})"
        )
    return int(hit[0])


# -- minimum vertex cut by max flow ------------------------------------------------


def min_vertex_cut(g: PlanarEmbeddedGraph, v: int, n: int, m: int) -> MinCutResult:
    """Minimum vertex set in the annulus separating B(v, n) from beyond B(v, m).

    Unit vertex capacities via vertex splitting; minimality is certified
    by the max-flow value, feasibility by an independent reachability
    check after removal.
    """
    if not n < m:
        raise PreconditionError(f"need n < m, got n={n}, m={m}")
    dist = g.dist_array(v)
    if not np.any(dist > m):
        raise PreconditionError(
            f"B({v}, {m}) covers the whole host; nothing to separate from"
        )
    ann = np.flatnonzero((dist > n) & (dist <= m))
    if len(ann) == 0:
        raise PreconditionError("annulus is empty")
    pos = {int(a): i for i, a in enumerate(ann)}
    k = len(ann)
    inf = np.int32(k + 1)
    src, snk = 0, 1
    node_in = lambda i: 2 + 2 * i
    node_out = lambda i: 3 + 2 * i

    rows, cols, caps = [], [], []

    def arc(a, b, c):
        rows.append(a)
        cols.append(b)
        caps.append(c)
        rows.append(b)
        cols.append(a)
        caps.append(0)

    for i in range(k):
        arc(node_in(i), node_out(i), 1)
    indptr, indices = g.csr().indptr, g.csr().indices
    for i, a in enumerate(ann):
        for kk in range(indptr[a], indptr[a + 1]):
            w = int(indices[kk])
            dw = dist[w]
            if w in pos:
                arc(node_out(i), node_in(pos[w]), int(inf))
            elif dw <= n:
                arc(src, node_in(i), int(inf))
            elif dw > m:
                arc(node_out(i), snk, int(inf))

    size = 2 * k + 2
    cap = coo_matrix(
        (np.array(caps, dtype=np.int32), (rows, cols)), shape=(size, size)
    ).tocsr()
    res = maximum_flow(cap, src, snk)
    flow_value = int(res.flow_value)

    residual = cap - res.flow
    residual.data = np.maximum(residual.data, 0)
    residual.eliminate_zeros()
    reach_nodes = breadth_first_order(residual, src, directed=True, return_predecessors=False)
    reach = set(int(x) for x in reach_nodes)
    cut_idx = [int(ann[i]) for i in range(k) if node_in(i) in reach and node_out(i) not in reach]
    if len(cut_idx) != flow_value:
        raise AssertionError(
            f"min-cut certificate mismatch: |cut| = {len(cut_idx)}, flow = {flow_value}"
        )
    ids = g.vertex_ids
    cut = frozenset(int(ids[i]) for i in cut_idx)

    # independent feasibility: removing the cut separates the ball from beyond m
    mask = np.ones(g.n_vertices, dtype=bool)
    mask[cut_idx] = False
    kept = np.flatnonzero(mask)
    sub = g.csr()[kept][:, kept]
    _, labels = connected_components(sub, directed=False)
    vpos = int(np.searchsorted(kept, g.idx(v)))
    comp = labels == labels[vpos]
    comp_idx = kept[comp]
    if np.any(dist[comp_idx] > m):
        raise AssertionError("max-flow cut does not separate: far vertex reachable")
    enclosed = frozenset(int(ids[i]) for i in comp_idx)
    return MinCutResult(cut, flow_value, enclosed, True)


# -- exact isoperimetric profile on tiny hosts --------------------------------------


def brute_profile(
    g: PlanarEmbeddedGraph, n_max: int | None = None, cap: int = BRUTE_CAP
) -> ProfileTable:
    """Exact profile I(n) by exhausting every nonempty vertex subset."""
    nv = g.n_vertices
    if nv > cap:
        raise PreconditionError(f"brute_profile limited to {cap} vertices, host has {nv}")
    if n_max is None:
        n_max = nv
    n_max = min(int(n_max), nv)
    ids = [int(x) for x in g.vertex_ids]
    masks = []
    for i, x in enumerate(ids):
        mk = 0
        for w in g.neighbors(x):
            mk |= 1 << ids.index(w)
        masks.append(mk)
    full = (1 << nv) - 1
    union = [0] * (1 << nv)
    size = [0] * (1 << nv)
    best = [nv + 1] * (nv + 1)
    for s in range(1, 1 << nv):
        low = s & -s
        t = s ^ low
        i = low.bit_length() - 1
        union[s] = union[t] | masks[i]
        size[s] = size[t] + 1
        b = (union[s] & ~s & full).bit_count()
        if b < best[size[s]]:
            best[size[s]] = b
    entries = []
    running = nv + 1
    for nn in range(1, n_max + 1):
        running = min(running, best[nn])
        entries.append((nn, int(running), None, None))
    for (n1, i1, _, _), (n2, i2, _, _) in zip(entries, entries[1:]):
        assert i2 <= i1, "profile must be nonincreasing in the subset-size cap"
    return ProfileTable("exact_bruteforce", tuple(entries))


def corollary_check(
    g: PlanarEmbeddedGraph, v: int, n_values, c_hat: float | None = None
) -> ProfileTable:
    """Constructed upper bounds: at scale phi(n) the domain around v gives
    I(|domain|) <= |boundary|, reported with the ratio |boundary| / phi(n)."""
    from .cutset import find_cutset

    entries = []
    prev_phi = 0
    for nn in sorted(int(x) for x in n_values):
        k = phi(g, v, nn)
        if k < 1:
            raise PreconditionError(
                f"phi({nn}) = 0: target volume reached at radius 0, no construction needed"
            )
        assert k >= prev_phi, "phi must be nondecreasing across the sweep"
        prev_phi = k
        res = find_cutset(g, v, k, c_hat)
        if len(res.omega) < nn:
            raise AssertionError(
                f"domain at scale phi({nn}) = {k} has {len(res.omega)} < {nn} vertices"
            )
        entries.append((nn, len(res.boundary), k, len(res.boundary) / k))
    return ProfileTable("constructed_upper", tuple(entries))

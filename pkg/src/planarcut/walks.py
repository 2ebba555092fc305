"""Random-walk displacement experiments and nested-cutset resistance sums.

Walk trials draw their randomness from per-trial seed streams derived
from ``(seed, trial index)``, so a concurrent implementation merging
per-trial results would produce identical output; the implementation
here steps all trials in lockstep with vectorized draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cutset import find_cutset
from .embedding import PlanarEmbeddedGraph
from .errors import PreconditionError


@dataclass(frozen=True)
class WalkReport:
    """Mean displacement of simple random walks from a center vertex.

    ``mean_displacement[i]`` averages ``d(start, X_t)`` at ``times[i]``
    over walks still alive (never having touched the rim) at that time;
    ``alive[i]`` counts them.  ``censored`` is the number of walks that
    touched the rim by ``t_max``; censoring is always reported, never
    silently folded into the averages.
    """

    center: int
    horizon_radius: int
    times: tuple[int, ...]
    mean_displacement: tuple[float, ...]
    alive: tuple[int, ...]
    censored: int
    alpha_hat: float
    fit_window: tuple[int, int]
    trials: int
    t_max: int
    seed: int


@dataclass(frozen=True)
class NashWilliamsReport:
    """Nested disjoint cutsets separating the center from the rim.

    ``partial_sum`` is the finite sum of reciprocal cutset sizes; no
    convergence verdict is attached.  Disjointness and separation are
    verified independently of the construction that produced the cutsets.
    """

    center: int
    schedule: tuple[int, ...]
    cutsets: tuple[tuple[int, int], ...]  # (scale n_k, |C_k|)
    partial_sum: float
    disjointness_verified: bool
    separation_verified: bool
    boundaries: tuple[frozenset[int], ...]


def geometric_times(t_max: int, per_decade: int = 8) -> tuple[int, ...]:
    """Geometric grid of integer times 0..t_max (deduplicated)."""
    if t_max < 1:
        raise PreconditionError(f"t_max must be positive, got {t_max}")
    n_pts = max(2, int(per_decade * math.log10(t_max)) + 1)
    pts = np.unique(
        np.round(np.logspace(0, math.log10(t_max), n_pts)).astype(np.int64)
    )
    return (0,) + tuple(int(t) for t in pts)


def srw_displacement(
    g: PlanarEmbeddedGraph,
    v: int,
    t_max: int,
    trials: int,
    seed: int,
    times: tuple[int, ...] | None = None,
) -> WalkReport:
    """Simple-random-walk mean displacement with a log-log exponent fit.

    Walks start at ``v`` and take uniform-neighbor steps; a walk touching
    the rim is censored from that time on.  ``alpha_hat`` is the slope of
    ``log mean-displacement`` against ``log t`` over the middle decade of
    the time range.
    """
    if trials < 1:
        raise PreconditionError(f"trials must be positive, got {trials}")
    vi = g.idx(v)
    dist = g.dist_array(v)
    horizon = g.rim_dist(v)
    if horizon < 2:
        raise PreconditionError(f"center {v} is on or next to the rim")
    rim_flag = np.zeros(g.n_vertices, dtype=bool)
    rim_flag[g.rim_index_array()] = True
    if times is None:
        times = geometric_times(t_max)
    times = tuple(sorted(set(int(t) for t in times)))
    if times[0] != 0 or times[-1] > t_max:
        raise PreconditionError("recorded times must start at 0 and stay <= t_max")

    offsets = g._offsets
    nbr = g._nbr
    degs = np.diff(offsets).astype(np.int64)

    rngs = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]
    cur = np.full(trials, vi, dtype=np.int64)
    alive = np.ones(trials, dtype=bool)

    rec_means: list[float] = []
    rec_alive: list[int] = []
    rec_iter = iter(times)
    next_rec = next(rec_iter)

    def record():
        k = int(alive.sum())
        rec_alive.append(k)
        rec_means.append(float(dist[cur[alive]].mean()) if k else math.nan)

    if next_rec == 0:
        record()
        next_rec = next(rec_iter, None)

    block = 1024
    t = 0
    while t < t_max:
        span = min(block, t_max - t)
        u = np.empty((trials, span))
        for i, rng in enumerate(rngs):
            u[i] = rng.random(span)
        for j in range(span):
            t += 1
            step = offsets[cur] + (u[:, j] * degs[cur]).astype(np.int64)
            nxt = nbr[step]
            cur = np.where(alive, nxt, cur)
            hit = alive & rim_flag[cur]
            if hit.any():
                alive &= ~hit
            if next_rec is not None and t == next_rec:
                record()
                next_rec = next(rec_iter, None)
    censored = trials - int(alive.sum())
    if censored == trials:
        raise PreconditionError("all walks were censored at the horizon")

    lo = 10 ** (math.log10(t_max) / 2 - 0.5)
    hi = 10 ** (math.log10(t_max) / 2 + 0.5)
    sel = [
        i
        for i, tt in enumerate(times)
        if lo <= tt <= hi and rec_alive[i] > 0 and rec_means[i] > 0
    ]
    if len(sel) < 2:
        raise PreconditionError("not enough usable points in the fit window")
    x = np.log([times[i] for i in sel])
    y = np.log([rec_means[i] for i in sel])
    alpha = float(np.polyfit(x, y, 1)[0])

    return WalkReport(
        int(v),
        int(horizon),
        times,
        tuple(rec_means),
        tuple(rec_alive),
        censored,
        alpha,
        (int(math.ceil(lo)), int(math.floor(hi))),
        trials,
        int(t_max),
        int(seed),
    )


def default_schedule(k_max: int) -> tuple[int, ...]:
    """Scales 1, 7, 43, ... (6x + 1): consecutive annuli B(6n) - B(n) are
    disjoint because each domain contains its inner ball."""
    out = [1]
    for _ in range(k_max - 1):
        out.append(6 * out[-1] + 1)
    return tuple(out)


def nash_williams(
    g: PlanarEmbeddedGraph,
    v: int,
    k_max: int,
    schedule: tuple[int, ...] | None = None,
    c_hat: float | None = None,
) -> NashWilliamsReport:
    """Nested separating cutsets and the sum of their reciprocal sizes.

    Each cutset is the boundary of the enclosing domain at scale ``n_k``;
    pairwise disjointness and separation of the center from the rim are
    rechecked here by plain set arithmetic and reachability, independent
    of the construction internals.  A custom (possibly bad) schedule is
    accepted and simply flagged when its cutsets overlap.
    """
    if k_max < 1:
        raise PreconditionError(f"k_max must be positive, got {k_max}")
    sched = tuple(int(x) for x in (schedule if schedule is not None else default_schedule(k_max)))
    if len(sched) != k_max or any(b <= a for a, b in zip(sched, sched[1:])):
        raise PreconditionError("schedule must be strictly increasing with k_max entries")

    boundaries = []
    for nk in sched:
        res = find_cutset(g, v, nk, c_hat)
        boundaries.append(frozenset(res.boundary))

    disjoint = True
    for i in range(len(boundaries)):
        for j in range(i + 1, len(boundaries)):
            if boundaries[i] & boundaries[j]:
                disjoint = False
    separated = all(_separates(g, v, b) for b in boundaries)

    partial = sum(1.0 / len(b) for b in boundaries)
    return NashWilliamsReport(
        int(v),
        sched,
        tuple((nk, len(b)) for nk, b in zip(sched, boundaries)),
        partial,
        disjoint,
        separated,
        tuple(boundaries),
    )


def _separates(g: PlanarEmbeddedGraph, v: int, cut: frozenset[int]) -> bool:
    """After removing ``cut``, the center must not reach any rim vertex."""
    if v in cut:
        return False
    mask = np.ones(g.n_vertices, dtype=bool)
    for x in cut:
        mask[g.idx(x)] = False
    kept = np.flatnonzero(mask)
    from scipy.sparse.csgraph import connected_components

    sub = g.csr()[kept][:, kept]
    _, labels = connected_components(sub, directed=False)
    vpos = int(np.searchsorted(kept, g.idx(v)))
    comp = set(kept[labels == labels[vpos]].tolist())
    return not any(int(r) in comp for r in g.rim_index_array())

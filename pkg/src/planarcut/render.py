"""Deterministic SVG rendering of hosts with result overlays.

Layout comes from the generator's lattice coordinates when available, or
from a harmonic (Tutte-style) embedding with the outer face pinned to a
regular polygon.  Coordinates are for display only; no computation in
this package depends on them.

Overlay layers and colors:

==========  =======================================
layer       color
==========  =======================================
edges       #c8c8c8
vertices    #505050
ball        #7fb3ff   (filled disks)
contour     #ff9a3d
omega       #9fdf9f
boundary    #c22326
geodesic    #d62ad6
delta       #7326c2
arc         #e8b31a
==========  =======================================
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.linalg import spsolve

from .embedding import PlanarEmbeddedGraph
from .errors import RenderError

COLORS = {
    "edges": "#c8c8c8",
    "vertices": "#505050",
    "ball": "#7fb3ff",
    "contour": "#ff9a3d",
    "omega": "#9fdf9f",
    "boundary": "#c22326",
    "geodesic": "#d62ad6",
    "delta": "#7326c2",
    "arc": "#e8b31a",
}

_SCALE = 24.0
_MARGIN = 30.0


def tutte_layout(g: PlanarEmbeddedGraph) -> dict[int, tuple[float, float]]:
    """Harmonic straight-line layout with the outer face walk on a circle."""
    outer_darts = g.face_orbit(g.outer_face)
    outer_cycle = [g.dart_origin(d) for d in outer_darts]
    uniq = list(dict.fromkeys(outer_cycle))
    if len(uniq) < 3 or len(uniq) != len(outer_cycle):
        raise RenderError(
            "host has no usable straight-line layout (outer walk is not a simple cycle)"
        )
    n = g.n_vertices
    pinned = np.zeros(n, dtype=bool)
    px = np.zeros(n)
    py = np.zeros(n)
    for k, vid in enumerate(uniq):
        i = g.idx(vid)
        ang = 2.0 * np.pi * k / len(uniq)
        pinned[i] = True
        px[i] = np.cos(ang)
        py[i] = np.sin(ang)
    free = np.flatnonzero(~pinned)
    if len(free):
        pos_of = np.full(n, -1, dtype=np.int64)
        pos_of[free] = np.arange(len(free))
        rows, cols, vals = [], [], []
        bx = np.zeros(len(free))
        by = np.zeros(len(free))
        for r, i in enumerate(free):
            deg = int(g._offsets[i + 1] - g._offsets[i])
            rows.append(r)
            cols.append(r)
            vals.append(float(deg))
            for k in range(g._offsets[i], g._offsets[i + 1]):
                j = int(g._nbr[k])
                if pinned[j]:
                    bx[r] += px[j]
                    by[r] += py[j]
                else:
                    rows.append(r)
                    cols.append(int(pos_of[j]))
                    vals.append(-1.0)
        lap = csr_matrix((vals, (rows, cols)), shape=(len(free), len(free)))
        try:
            sx = spsolve(lap, bx)
            sy = spsolve(lap, by)
        except Exception as e:  # singular system: degenerate host
            raise RenderError(f"harmonic layout failed: {e}") from None
        px[free] = sx
        py[free] = sy
    coords = {int(g.vid(i)): (float(px[i]), float(py[i])) for i in range(n)}
    span = max(
        max(abs(x) for x, _ in coords.values()),
        max(abs(y) for _, y in coords.values()),
    )
    if not np.isfinite(span) or span == 0:
        raise RenderError("harmonic layout collapsed to a point")
    return coords


def render_svg(
    g: PlanarEmbeddedGraph,
    layout: dict[int, tuple[float, float]] | None = None,
    overlays: dict | None = None,
) -> str:
    """Deterministic SVG for the host with optional overlay layers.

    ``overlays`` may contain vertex collections under ``ball``,
    ``contour``, ``omega``, ``boundary`` and a ``paths`` list of
    ``(role, vertices)`` pairs drawn as polylines.
    """
    if layout is None:
        layout = tutte_layout(g)
    missing = [v for v in map(int, g.vertex_ids) if v not in layout]
    if missing:
        raise RenderError(f"layout misses {len(missing)} vertices (e.g. {missing[0]})")
    overlays = overlays or {}

    xs = [p[0] for p in layout.values()]
    ys = [p[1] for p in layout.values()]
    x0, y0 = min(xs), min(ys)

    def pt(v):
        x, y = layout[int(v)]
        return (
            _MARGIN + _SCALE * (x - x0),
            _MARGIN + _SCALE * (max(ys) - y),
        )

    w = 2 * _MARGIN + _SCALE * (max(xs) - x0)
    h = 2 * _MARGIN + _SCALE * (max(ys) - y0)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.3f}" height="{h:.3f}" '
        f'viewBox="0 0 {w:.3f} {h:.3f}">'
    ]

    out.append(f'<g id="edges" stroke="{COLORS["edges"]}" stroke-width="1.2">')
    for i in range(g.n_darts):
        t = g._twin[i]
        if i < t:
            xa, ya = pt(g.dart_origin(i))
            xb, yb = pt(g.dart_head(i))
            out.append(
                f'<line x1="{xa:.3f}" y1="{ya:.3f}" x2="{xb:.3f}" y2="{yb:.3f}"/>'
            )
    out.append("</g>")

    for layer in ("ball", "omega"):
        if layer in overlays:
            out.append(f'<g id="{layer}" fill="{COLORS[layer]}">')
            for v in sorted(int(x) for x in overlays[layer]):
                x, y = pt(v)
                out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="5.0"/>')
            out.append("</g>")

    if "paths" in overlays:
        for idx, (role, verts) in enumerate(overlays["paths"]):
            color = COLORS.get(role, "#000000")
            pts = " ".join(f"{pt(v)[0]:.3f},{pt(v)[1]:.3f}" for v in verts)
            out.append(
                f'<polyline id="path{idx}-{role}" fill="none" '
                f'stroke="{color}" stroke-width="2.5" points="{pts}"/>'
            )

    for layer in ("contour", "boundary"):
        if layer in overlays:
            out.append(f'<g id="{layer}" fill="{COLORS[layer]}">')
            for v in sorted(int(x) for x in overlays[layer]):
                x, y = pt(v)
                out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3.4"/>')
            out.append("</g>")

    out.append(f'<g id="vertices" fill="{COLORS["vertices"]}">')
    for v in map(int, g.vertex_ids):
        x, y = pt(v)
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="2.0"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

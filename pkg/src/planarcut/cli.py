"""Command-line interface.

Subcommands: generate, cutset, verify, doubling, growth, profile, mincut,
walk, nashwilliams, render.  Exit codes: 0 success, 1 verification
failure, 2 input or precondition error.  All outputs are deterministic
byte-for-byte given identical inputs and seeds.

Report schemas are documented in docs/FORMATS.md and in the per-command
``--help`` epilogs.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .cutset import CurvePath, CutsetResult, find_cutset, verify_cutset
from .embedding import boundary as vertex_boundary
from .embedding import ball
from .contour import contour
from .errors import (
    GraphFormatError,
    PlanarCutError,
    PreconditionError,
    RenderError,
    VerificationError,
)
from .generators import FAMILIES, FamilySpec, generate, lattice_layout
from .graph_io import read_graph, write_graph
from .metrics import (
    brute_profile,
    corollary_check,
    doubling_constant,
    growth_exponent,
    min_vertex_cut,
    phi,
)
from .render import render_svg
from .walks import nash_williams, srw_displacement
from .cutset import _omega_of_removal

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2


def _write_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    def cell(x):
        if isinstance(x, float):
            return f"{x:.6f}"
        return str(x)

    lines = [",".join(header)]
    lines.extend(",".join(cell(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def _emit(args, doc, header=None, rows=None) -> None:
    if getattr(args, "format", "json") == "csv":
        if header is None:
            raise PreconditionError("this report has no CSV form")
        _write_text(_csv_text(header, rows), args.out)
    else:
        _write_text(_json_text(doc), args.out)


def _load_graph(args):
    if not args.graph:
        raise PreconditionError("--graph is required")
    return read_graph(args.graph)


def _parse_params(pairs: list[str]) -> dict[str, int]:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise PreconditionError(f"--param expects name=value, got {pair!r}")
        k, _, val = pair.partition("=")
        try:
            out[k.strip()] = int(val)
        except ValueError:
            raise PreconditionError(f"parameter {k!r} must be an integer, got {val!r}")
    return out


def _parse_radii(text: str) -> list[int]:
    if ":" in text:
        lo, _, hi = text.partition(":")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x]


# -- subcommand handlers -------------------------------------------------------


def _cmd_generate(args) -> int:
    spec = FamilySpec(args.family, _parse_params(args.param), args.seed)
    g = generate(spec)
    if args.out:
        write_graph(g, args.out)
    else:
        write_graph(g, sys.stdout)
    return EXIT_OK


def _cmd_cutset(args) -> int:
    g = _load_graph(args)
    res = find_cutset(g, args.center, args.radius, args.c_hat)
    _emit(args, res.report_dict())
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _load_graph(args)
    with open(args.result, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    report, consistent = _verify_result_doc(g, args.center, args.radius, doc)
    text = report.summary()
    for name, ok in consistent.items():
        text += f"\n{'PASS' if ok else 'FAIL'} file_{name}"
    _write_text(text + "\n", args.out)
    if report.passed and all(consistent.values()):
        return EXIT_OK
    return EXIT_VERIFY


def _verify_result_doc(g, v, n, doc):
    """Rebuild the domain from the report's curve paths and recheck it."""
    for key in ("case", "n", "v", "paths", "path_roles"):
        if key not in doc:
            raise PreconditionError(f"result file misses key {key!r}")
    if doc["v"] != v or doc["n"] != n:
        raise PreconditionError(
            f"result file is for (v={doc['v']}, n={doc['n']}), "
            f"not the requested (v={v}, n={n})"
        )
    paths = tuple(
        CurvePath(role, tuple(int(x) for x in verts))
        for role, verts in zip(doc["path_roles"], doc["paths"])
    )
    removal = set()
    for piece in paths:
        if piece.role in ("geodesic", "delta"):
            removal.update(piece.vertices)
    if doc["case"] == "trivial":
        omega = ball(g, v, 4 * n)
    else:
        omega, _ = _omega_of_removal(g, v, removal)
    bnd = vertex_boundary(g, omega)
    res = CutsetResult(
        int(v),
        int(n),
        frozenset(omega),
        frozenset(bnd),
        doc["case"],
        paths,
        int(doc.get("bound_used", 0)),
        float(doc.get("c_hat", 0.0)),
        bool(doc.get("curve_is_simple", False)),
        None,
    )
    report = verify_cutset(g, v, n, res)
    consistent = {
        "omega_size": doc.get("omega_size") == len(omega),
        "boundary_size": doc.get("boundary_size") == len(bnd),
        "curve_is_simple": doc.get("curve_is_simple") == report.curve_is_simple,
    }
    return report, consistent


def _cmd_doubling(args) -> int:
    g = _load_graph(args)
    centers = [int(x) for x in args.centers.split(",")] if args.centers else None
    radii = _parse_radii(args.radii) if args.radii else None
    est = doubling_constant(g, centers, radii, seed=args.seed)
    doc = {
        "c_hat": est.c_hat,
        "radius_window": list(est.radius_window),
        "samples": [list(s) for s in est.samples],
    }
    _emit(
        args,
        doc,
        header=["a", "b", "n", "ratio"],
        rows=[[a, b, nn, r] for a, b, nn, r in est.samples],
    )
    return EXIT_OK


def _cmd_growth(args) -> int:
    g = _load_graph(args)
    fit = growth_exponent(g, args.center, _parse_radii(args.radii))
    doc = {
        "d_hat": fit.d_hat,
        "residual": fit.residual,
        "radii": list(fit.radii),
        "volumes": list(fit.volumes),
    }
    _emit(
        args,
        doc,
        header=["radius", "volume"],
        rows=[[r, vol] for r, vol in zip(fit.radii, fit.volumes)],
    )
    return EXIT_OK


def _cmd_profile(args) -> int:
    g = _load_graph(args)
    if args.brute:
        table = brute_profile(g, args.nmax)
    else:
        if args.center is None or not args.nvalues:
            raise PreconditionError("constructed profile needs --center and --nvalues")
        table = corollary_check(
            g, args.center, [int(x) for x in args.nvalues.split(",")], args.c_hat
        )
    doc = {
        "mode": table.mode,
        "entries": [
            {"n": n, "value": val, "phi": ph, "ratio": ratio}
            for n, val, ph, ratio in table.entries
        ],
    }
    rows = [
        [n, val, "" if ph is None else ph, "" if ratio is None else ratio]
        for n, val, ph, ratio in table.entries
    ]
    _emit(args, doc, header=["n", "value", "phi", "ratio"], rows=rows)
    return EXIT_OK


def _cmd_mincut(args) -> int:
    g = _load_graph(args)
    outer = args.outer if args.outer is not None else 6 * args.radius
    res = min_vertex_cut(g, args.center, args.radius, outer)
    doc = {
        "size": res.size,
        "cut": sorted(res.cut),
        "enclosed_size": len(res.enclosed),
        "verified": res.verified,
    }
    _emit(args, doc)
    return EXIT_OK


def _cmd_walk(args) -> int:
    g = _load_graph(args)
    rep = srw_displacement(g, args.center, args.tmax, args.trials, args.seed)
    doc = {
        "center": rep.center,
        "horizon_radius": rep.horizon_radius,
        "alpha_hat": rep.alpha_hat,
        "fit_window": list(rep.fit_window),
        "trials": rep.trials,
        "t_max": rep.t_max,
        "seed": rep.seed,
        "censored": rep.censored,
        "times": list(rep.times),
        "mean_displacement": list(rep.mean_displacement),
        "alive": list(rep.alive),
    }
    rows = [
        [t, m, a]
        for t, m, a in zip(rep.times, rep.mean_displacement, rep.alive)
    ]
    _emit(args, doc, header=["t", "mean_displacement", "alive"], rows=rows)
    return EXIT_OK


def _cmd_nashwilliams(args) -> int:
    g = _load_graph(args)
    schedule = (
        tuple(int(x) for x in args.schedule.split(",")) if args.schedule else None
    )
    rep = nash_williams(g, args.center, args.kmax, schedule, args.c_hat)
    doc = {
        "center": rep.center,
        "schedule": list(rep.schedule),
        "cutsets": [list(c) for c in rep.cutsets],
        "partial_sum": rep.partial_sum,
        "disjointness_verified": rep.disjointness_verified,
        "separation_verified": rep.separation_verified,
    }
    rows = [[k + 1, nk, size] for k, (nk, size) in enumerate(rep.cutsets)]
    _emit(args, doc, header=["k", "n_k", "cutset_size"], rows=rows)
    if not (rep.disjointness_verified and rep.separation_verified):
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_render(args) -> int:
    g = _load_graph(args)
    layout = None
    if args.family:
        spec = FamilySpec(args.family, _parse_params(args.param), args.seed)
        layout = lattice_layout(spec)
    overlays = {}
    if args.center is not None and args.radius is not None:
        overlays["ball"] = ball(g, args.center, args.radius)
        cp = contour(g, args.center, args.radius)
        overlays["contour"] = cp.support
    if args.result:
        with open(args.result, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        paths = list(zip(doc["path_roles"], doc["paths"]))
        overlays["paths"] = paths
        removal = set()
        for role, verts in paths:
            if role in ("geodesic", "delta"):
                removal.update(verts)
        if doc["case"] == "trivial":
            omega = ball(g, doc["v"], 4 * doc["n"])
        else:
            omega, _ = _omega_of_removal(g, doc["v"], removal)
        overlays["omega"] = omega
        overlays["boundary"] = vertex_boundary(g, omega)
    svg = render_svg(g, layout, overlays)
    _write_text(svg, args.out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="planarcut",
        description="Enclosing domains, growth metrics and walk experiments "
        "on planar embedded graphs.",
    )
    ap.add_argument("--version", action="version", version=f"planarcut {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("--graph", help="host graph JSON file")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument(
            "--format", choices=("json", "csv"), default="json", help="output format"
        )
        p.add_argument("--seed", type=int, default=0, help="PRNG seed")

    p = sub.add_parser("generate", help="generate a host graph")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument(
        "--param", action="append", default=[], metavar="NAME=VALUE",
        help="family parameter (repeatable), e.g. w=401",
    )
    common(p, graph=False)
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser(
        "cutset",
        help="build and verify an enclosing domain",
        epilog="JSON keys: case, n, v, omega_size, boundary_size, bound_used, "
        "ratio, curve_is_simple, paths, path_roles, c_hat.",
    )
    common(p)
    p.add_argument("--center", type=int, required=True)
    p.add_argument("--radius", type=int, required=True, help="scale n")
    p.add_argument("--c-hat", type=float, default=None, dest="c_hat")
    p.set_defaults(fn=_cmd_cutset)

    p = sub.add_parser("verify", help="recheck a cutset report file")
    common(p)
    p.add_argument("--center", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--result", required=True, help="cutset report JSON")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser(
        "doubling",
        help="measure the doubling ratio",
        epilog="CSV columns: a, b, n, ratio (one row per radius).",
    )
    common(p)
    p.add_argument("--centers", help="comma-separated center ids (default: sampled)")
    p.add_argument("--radii", help="lo:hi or comma list (default: widest valid)")
    p.set_defaults(fn=_cmd_doubling)

    p = sub.add_parser(
        "growth",
        help="fit the volume growth exponent",
        epilog="CSV columns: radius, volume.",
    )
    common(p)
    p.add_argument("--center", type=int, required=True)
    p.add_argument("--radii", required=True, help="lo:hi or comma list")
    p.set_defaults(fn=_cmd_growth)

    p = sub.add_parser(
        "profile",
        help="isoperimetric profile (exact or constructed upper bounds)",
        epilog="CSV columns: n, value, phi, ratio.",
    )
    common(p)
    p.add_argument("--brute", action="store_true", help="exact profile (<= 18 vertices)")
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--center", type=int)
    p.add_argument("--nvalues", help="comma-separated target volumes")
    p.add_argument("--c-hat", type=float, default=None, dest="c_hat")
    p.set_defaults(fn=_cmd_profile)

    p = sub.add_parser("mincut", help="minimum vertex cut in an annulus (max-flow)")
    common(p)
    p.add_argument("--center", type=int, required=True)
    p.add_argument("--radius", type=int, required=True, help="inner radius n")
    p.add_argument("--outer", type=int, default=None, help="outer radius m (default 6n)")
    p.set_defaults(fn=_cmd_mincut)

    p = sub.add_parser(
        "walk",
        help="simple-random-walk displacement experiment",
        epilog="CSV columns: t, mean_displacement, alive.",
    )
    common(p)
    p.add_argument("--center", type=int, required=True)
    p.add_argument("--tmax", type=int, default=10**4)
    p.add_argument("--trials", type=int, default=2000)
    p.set_defaults(fn=_cmd_walk)

    p = sub.add_parser(
        "nashwilliams",
        help="nested disjoint cutsets and their reciprocal-size sum",
        epilog="CSV columns: k, n_k, cutset_size.",
    )
    common(p)
    p.add_argument("--center", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--schedule", help="comma-separated scales (default 1,7,43,...)")
    p.add_argument("--c-hat", type=float, default=None, dest="c_hat")
    p.set_defaults(fn=_cmd_nashwilliams)

    p = sub.add_parser("render", help="render the host (and overlays) to SVG")
    common(p)
    p.add_argument("--center", type=int, help="overlay ball/contour at this center")
    p.add_argument("--radius", type=int)
    p.add_argument("--result", help="cutset report JSON to overlay")
    p.add_argument("--family", choices=FAMILIES, help="use this family's lattice layout")
    p.add_argument(
        "--param", action="append", default=[], metavar="NAME=VALUE",
        help="family parameter for --family layout",
    )
    p.set_defaults(fn=_cmd_render)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except VerificationError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (GraphFormatError, PreconditionError, RenderError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except PlanarCutError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

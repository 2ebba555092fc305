"""Enclosing domains with small boundaries on planar embedded graphs.

For hosts with bounded volume doubling, the package constructs, for any
center ``v`` and scale ``n``, a domain containing ``B(v, n)`` whose
external boundary lies inside ``B(v, 6n)`` and has O(n) vertices; it
ships the winding-parity machinery the construction rests on, growth and
isoperimetry metrics with independent oracles, deterministic host
generators, random-walk experiments, and a CLI.
"""

__version__ = "0.1.0"

from .contour import ContourParametrization, contour
from .cutset import (
    ComponentGraph,
    CutsetResult,
    Net,
    VerificationReport,
    choose_base_pair,
    epsilon_net,
    find_cutset,
    geodesic,
    verify_cutset,
)
from .embedding import (
    DistanceField,
    PlanarEmbeddedGraph,
    Walk,
    ball,
    bfs_distances,
    boundary,
    faces,
    sphere,
)
from .errors import (
    ConstructionError,
    GraphFormatError,
    PlanarCutError,
    PreconditionError,
    RenderError,
    VerificationError,
)
from .generators import FamilySpec, generate, grid, lattice_layout, spider, tree
from .graph_io import ManifestEntry, read_graph, read_manifest, write_graph, write_manifest
from .metrics import (
    DoublingEstimate,
    GrowthFit,
    MinCutResult,
    ProfileTable,
    brute_profile,
    corollary_check,
    doubling_constant,
    fit_power_law,
    growth_exponent,
    min_vertex_cut,
    phi,
)
from .render import render_svg, tutte_layout
from .walks import NashWilliamsReport, WalkReport, nash_williams, srw_displacement
from .winding import DualRay, dual_ray, splice_parity_check, winding_parity

__all__ = [
    "__version__",
    "PlanarEmbeddedGraph",
    "DistanceField",
    "Walk",
    "bfs_distances",
    "ball",
    "sphere",
    "boundary",
    "faces",
    "ContourParametrization",
    "contour",
    "DualRay",
    "dual_ray",
    "winding_parity",
    "splice_parity_check",
    "Net",
    "ComponentGraph",
    "CutsetResult",
    "VerificationReport",
    "epsilon_net",
    "geodesic",
    "choose_base_pair",
    "find_cutset",
    "verify_cutset",
    "DoublingEstimate",
    "GrowthFit",
    "ProfileTable",
    "MinCutResult",
    "doubling_constant",
    "growth_exponent",
    "fit_power_law",
    "phi",
    "min_vertex_cut",
    "brute_profile",
    "corollary_check",
    "FamilySpec",
    "generate",
    "grid",
    "spider",
    "tree",
    "lattice_layout",
    "read_graph",
    "write_graph",
    "ManifestEntry",
    "read_manifest",
    "write_manifest",
    "WalkReport",
    "NashWilliamsReport",
    "srw_displacement",
    "nash_williams",
    "render_svg",
    "tutte_layout",
    "PlanarCutError",
    "GraphFormatError",
    "PreconditionError",
    "ConstructionError",
    "VerificationError",
    "RenderError",
]

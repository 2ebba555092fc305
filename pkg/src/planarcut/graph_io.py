"""Graph serialization and corpus manifests.

File format (JSON, one object)::

    {
      "vertices": [id, ...],
      "rotations": {"id": [neighbor ids, counterclockwise cyclic order], ...},
      "outer_face_dart": [origin, head]
    }

Writing is canonical and byte-stable: vertices sorted, rotation lists
rotated to start at the smallest neighbor, compact separators, trailing
newline.  Reading validates the schema and the rotation system (Euler's
formula included) and reports a positioned error on rejection.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import asdict, dataclass
from typing import Iterable

from .embedding import PlanarEmbeddedGraph
from .errors import GraphFormatError


def _canonical_rotation(row: list[int]) -> list[int]:
    k = row.index(min(row))
    return row[k:] + row[:k]


def write_graph(g: PlanarEmbeddedGraph, sink) -> None:
    """Write ``g`` to a path or text file object in canonical form."""
    buf = io.StringIO()
    buf.write('{"vertices":')
    ids = [int(v) for v in g.vertex_ids]
    json.dump(ids, buf, separators=(",", ":"))
    buf.write(',"rotations":{')
    for pos, v in enumerate(ids):
        if pos:
            buf.write(",")
        buf.write(json.dumps(str(v)))
        buf.write(":")
        json.dump(_canonical_rotation(g.neighbors(v)), buf, separators=(",", ":"))
    outer = min(g.face_orbit(g.outer_face))
    buf.write('},"outer_face_dart":')
    json.dump([g.dart_origin(outer), g.dart_head(outer)], buf, separators=(",", ":"))
    buf.write("}\n")
    text = buf.getvalue()
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(text)


def graph_to_bytes(g: PlanarEmbeddedGraph) -> bytes:
    buf = io.StringIO()
    write_graph(g, buf)
    return buf.getvalue().encode("utf-8")


def read_graph(source) -> PlanarEmbeddedGraph:
    """Load a graph from a path, text file object, or JSON string."""
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(e.msg, f"line {e.lineno} col {e.colno}") from None

    if not isinstance(doc, dict):
        raise GraphFormatError("top-level value must be an object", "$")
    for key in ("vertices", "rotations", "outer_face_dart"):
        if key not in doc:
            raise GraphFormatError(f"missing required key {key!r}", "$")

    verts = doc["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, int) for v in verts):
        raise GraphFormatError("must be a list of integer ids", "vertices")
    if len(set(verts)) != len(verts):
        raise GraphFormatError("duplicate vertex ids", "vertices")

    rot_doc = doc["rotations"]
    if not isinstance(rot_doc, dict):
        raise GraphFormatError("must be an object", "rotations")
    vert_set = set(verts)
    rotations: dict[int, list[int]] = {}
    for key, row in rot_doc.items():
        try:
            v = int(key)
        except ValueError:
            raise GraphFormatError("key is not an integer id", f"rotations.{key}") from None
        if v not in vert_set:
            raise GraphFormatError(f"{v} is not in vertices", f"rotations.{key}")
        if not isinstance(row, list) or not all(isinstance(w, int) for w in row):
            raise GraphFormatError("must be a list of integer ids", f"rotations.{key}")
        rotations[v] = row
    missing = vert_set - set(rotations)
    if missing:
        raise GraphFormatError(
            f"vertices without a rotation entry: {sorted(missing)[:5]}", "rotations"
        )

    ofd = doc["outer_face_dart"]
    if (
        not isinstance(ofd, list)
        or len(ofd) != 2
        or not all(isinstance(x, int) for x in ofd)
    ):
        raise GraphFormatError("must be [origin, head]", "outer_face_dart")

    return PlanarEmbeddedGraph(rotations, (ofd[0], ofd[1]))


@dataclass(frozen=True)
class ManifestEntry:
    """One corpus instance with its measured growth characteristics."""

    family: str
    params: dict
    seed: int
    path: str
    c_hat: float | None = None
    d_hat: float | None = None
    excluded: bool = False
    note: str = ""


def write_manifest(entries: Iterable[ManifestEntry], sink) -> None:
    doc = {"instances": [asdict(e) for e in entries]}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(text)


def read_manifest(source) -> list[ManifestEntry]:
    if hasattr(source, "read"):
        doc = json.load(source)
    else:
        with open(source, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    return [ManifestEntry(**e) for e in doc["instances"]]

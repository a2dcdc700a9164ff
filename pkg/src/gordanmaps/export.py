"""Mesh and report writers."""

from __future__ import annotations

import json
from typing import List, Tuple

from .field import to_float
from .realization import SkeletalPolyhedron, canonical_cycle
from .symmetry import point_key

__all__ = ["emit_off", "emit_obj", "dumps_json", "DEFAULT_DIGITS"]

DEFAULT_DIGITS = 17


def _canonical_mesh(poly: SkeletalPolyhedron) -> Tuple[list, List[tuple]]:
    order = sorted(range(len(poly.vertices)), key=lambda i: point_key(poly.vertices[i]))
    new = {old: k for k, old in enumerate(order)}
    verts = [poly.vertices[i] for i in order]
    faces = sorted(canonical_cycle([new[v] for v in f]) for f in poly.faces)
    return verts, faces


def emit_off(poly: SkeletalPolyhedron, digits: int = DEFAULT_DIGITS) -> str:
    """OFF text; the counts line is ``f0 f1 f2`` (vertices, edges, faces).

    Vertices are sorted by exact coordinates, so output is byte-stable.
    """
    verts, faces = _canonical_mesh(poly)
    lines = ["OFF", f"{len(verts)} {len(poly.edges)} {len(faces)}"]
    for p in verts:
        lines.append(" ".join(to_float(x, digits) for x in p))
    for f in faces:
        lines.append(" ".join(map(str, (len(f), *f))))
    return "\n".join(lines) + "\n"


def emit_obj(poly: SkeletalPolyhedron, digits: int = DEFAULT_DIGITS) -> str:
    verts, faces = _canonical_mesh(poly)
    lines = [f"# {len(verts)} vertices, {len(poly.edges)} edges, {len(faces)} faces"]
    lines += ["v " + " ".join(to_float(x, digits) for x in p) for p in verts]
    lines += ["f " + " ".join(str(v + 1) for v in f) for f in faces]
    return "\n".join(lines) + "\n"


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"

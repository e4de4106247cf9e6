"""Static SVG figures.

Curve figures shade each bounded face of the trace subdivision with
opacity growing in |winding|, so multiply covered regions read darker.
Mesh figures color triangles by the mean value magnitude of their
corners.  Output is deterministic: fixed formatting, no timestamps.
"""

from __future__ import annotations

import numpy as np

from .curves import ClosedPolyline
from .plateau import DiscreteMap
from .winding import build_arrangement


def _f(x: float) -> str:
    return f"{x:.6g}"


def _header(lo, hi) -> tuple[str, str]:
    span = np.maximum(hi - lo, 1e-9)
    pad = 0.05 * float(np.max(span))
    x0, y0 = lo[0] - pad, -(hi[1] + pad)
    w, h = hi[0] - lo[0] + 2 * pad, hi[1] - lo[1] + 2 * pad
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" width="480" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(w)} {_f(h)}">'
    )
    return head, "</svg>"


def _points(coords: np.ndarray) -> str:
    return " ".join(f"{_f(p[0])},{_f(-p[1])}" for p in coords)


def curve_svg(poly: ClosedPolyline) -> str:
    """Completed curve over its winding-number face shading."""
    arr = build_arrangement(poly)
    pts = poly.vertices
    lo = np.min(pts, axis=0)
    hi = np.max(pts, axis=0)
    head, tail = _header(lo, hi)
    span = float(np.max(hi - lo))
    width = _f(max(span, 1e-9) * 0.004)

    parts = [head]
    for face in arr.faces:
        if face.is_outer or face.winding == 0:
            continue
        opacity = min(0.9, 0.3 * abs(face.winding))
        cycle = arr.vertices[list(face.vertex_cycle)]
        parts.append(
            f'<polygon points="{_points(cycle)}" fill="#3a6ea5" '
            f'opacity="{_f(opacity)}"/>'
        )
    parts.append(
        f'<polygon points="{_points(pts)}" fill="none" stroke="#1b1b1b" '
        f'stroke-width="{width}"/>'
    )
    parts.append(tail)
    return "\n".join(parts) + "\n"


def mesh_svg(dmap: DiscreteMap) -> str:
    """Triangles of a discrete map colored by value magnitude."""
    mesh = dmap.mesh
    mag = np.linalg.norm(dmap.values, axis=1)
    tri_mag = np.mean(mag[mesh.triangles], axis=1)
    top = float(np.max(tri_mag))
    t = tri_mag / top if top > 0.0 else np.zeros_like(tri_mag)

    low = np.array([240.0, 244.0, 248.0])
    high = np.array([24.0, 60.0, 120.0])
    lo = np.min(mesh.vertices, axis=0)
    hi = np.max(mesh.vertices, axis=0)
    head, tail = _header(lo, hi)

    parts = [head]
    for tri, ti in zip(mesh.triangles, t):
        rgb = np.rint(low + ti * (high - low)).astype(int)
        color = f"#{rgb[0]:02x}{rgb[1]:02x}{rgb[2]:02x}"
        parts.append(
            f'<polygon points="{_points(mesh.vertices[tri])}" fill="{color}"/>'
        )
    parts.append(tail)
    return "\n".join(parts) + "\n"

"""Scene containers and deterministic JSON / OBJ / SVG export.

Every float is quantized to 9 significant digits before emission and
dictionary keys are sorted, so identical scenes serialize to identical bytes
and an export -> import -> export round trip is byte-stable.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import jsonschema
import numpy as np

SCENE_VERSION = 1


def fmt9(x: float) -> str:
    """Fixed 9-significant-digit decimal form of a float."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("cannot format a non-finite number")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return format(x, ".9g")


def quantize(x: float) -> float:
    return float(fmt9(x))


def _qlist(arr) -> list:
    a = np.asarray(arr, dtype=float)
    if a.ndim == 1:
        return [quantize(v) for v in a]
    return [_qlist(row) for row in a]


def _meta(metadata: dict) -> dict:
    return {str(k): str(v) for k, v in metadata.items()}


@dataclass
class Curve3:
    """Sampled space curve.  Closed curves do not repeat their first point."""

    points: np.ndarray
    closed: bool = True
    metadata: dict = field(default_factory=dict)
    contains_infinity: bool = False

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 2:
            raise ValueError("points must have shape (n >= 2, 3)")
        if not np.all(np.isfinite(pts)):
            raise ValueError("curve points must be finite")
        if self.closed and pts.shape[0] >= 2 and np.allclose(pts[0], pts[-1], atol=0.0):
            raise ValueError("closed curves must not repeat the first point")
        self.points = pts

    def to_dict(self) -> dict:
        return {
            "points": _qlist(self.points),
            "closed": bool(self.closed),
            "metadata": _meta(self.metadata),
            "contains_infinity": bool(self.contains_infinity),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Curve3":
        return cls(np.asarray(d["points"], dtype=float), bool(d["closed"]),
                   dict(d.get("metadata", {})), bool(d.get("contains_infinity", False)))


@dataclass
class Mesh:
    """Triangle mesh with 0-based indices."""

    vertices: np.ndarray
    triangles: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        verts = np.asarray(self.vertices, dtype=float)
        tris = np.asarray(self.triangles, dtype=int)
        if verts.ndim != 2 or verts.shape[1] != 3 or verts.shape[0] < 3:
            raise ValueError("vertices must have shape (n >= 3, 3)")
        if not np.all(np.isfinite(verts)):
            raise ValueError("vertices must be finite")
        if tris.ndim != 2 or tris.shape[1] != 3 or tris.shape[0] < 1:
            raise ValueError("triangles must have shape (m >= 1, 3)")
        if tris.min() < 0 or tris.max() >= verts.shape[0]:
            raise ValueError("triangle indices out of range")
        if np.any((tris[:, 0] == tris[:, 1]) | (tris[:, 1] == tris[:, 2])
                  | (tris[:, 0] == tris[:, 2])):
            raise ValueError("degenerate triangle (repeated vertex index)")
        self.vertices = verts
        self.triangles = tris

    def to_dict(self) -> dict:
        return {
            "vertices": _qlist(self.vertices),
            "triangles": [[int(i) for i in t] for t in self.triangles],
            "metadata": _meta(self.metadata),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Mesh":
        return cls(np.asarray(d["vertices"], dtype=float),
                   np.asarray(d["triangles"], dtype=int), dict(d.get("metadata", {})))


@dataclass
class PlanarCircle:
    center: np.ndarray
    radius: float
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        c = np.asarray(self.center, dtype=float)
        if c.shape != (2,) or not np.all(np.isfinite(c)) or not self.radius > 0:
            raise ValueError("planar circle needs a finite 2D center and positive radius")
        self.center = c
        self.radius = float(self.radius)

    def to_dict(self) -> dict:
        return {"type": "circle", "center": _qlist(self.center),
                "radius": quantize(self.radius), "metadata": _meta(self.metadata)}


@dataclass
class PlanarLine:
    point: np.ndarray
    direction: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        p = np.asarray(self.point, dtype=float)
        d = np.asarray(self.direction, dtype=float)
        if p.shape != (2,) or d.shape != (2,) or np.linalg.norm(d) == 0:
            raise ValueError("planar line needs a 2D point and nonzero direction")
        self.point = p
        self.direction = d / np.linalg.norm(d)

    def to_dict(self) -> dict:
        return {"type": "line", "point": _qlist(self.point),
                "direction": _qlist(self.direction), "metadata": _meta(self.metadata)}


@dataclass
class PlanarPath:
    points: np.ndarray
    closed: bool = True
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ValueError("points must have shape (n >= 2, 2)")
        if not np.all(np.isfinite(pts)):
            raise ValueError("path points must be finite")
        self.points = pts

    def to_dict(self) -> dict:
        return {"type": "path", "points": _qlist(self.points),
                "closed": bool(self.closed), "metadata": _meta(self.metadata)}


def planar_from_generalized(circle, metadata: dict | None = None):
    """Wrap an algebraic circle/line locus as a planar scene primitive."""
    metadata = metadata or {}
    if circle.is_line:
        p, d = circle.line_point, circle.line_direction
        return PlanarLine(np.array([p.real, p.imag]), np.array([d.real, d.imag]), metadata)
    c = circle.center
    return PlanarCircle(np.array([c.real, c.imag]), circle.radius, metadata)


def _planar_from_dict(d: dict):
    kind = d["type"]
    if kind == "circle":
        return PlanarCircle(np.asarray(d["center"], float), float(d["radius"]),
                            dict(d.get("metadata", {})))
    if kind == "line":
        return PlanarLine(np.asarray(d["point"], float),
                          np.asarray(d["direction"], float), dict(d.get("metadata", {})))
    if kind == "path":
        return PlanarPath(np.asarray(d["points"], float), bool(d["closed"]),
                          dict(d.get("metadata", {})))
    raise ValueError(f"unknown planar primitive type {kind!r}")


@dataclass
class SceneDocument:
    curves: list = field(default_factory=list)
    meshes: list = field(default_factory=list)
    planar: list = field(default_factory=list)
    annotations: dict = field(default_factory=dict)
    version: int = SCENE_VERSION

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "curves": [c.to_dict() for c in self.curves],
            "meshes": [m.to_dict() for m in self.meshes],
            "planar": [p.to_dict() for p in self.planar],
            "annotations": _meta(self.annotations),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SceneDocument":
        validate_scene_dict(d)
        return cls(
            curves=[Curve3.from_dict(c) for c in d["curves"]],
            meshes=[Mesh.from_dict(m) for m in d["meshes"]],
            planar=[_planar_from_dict(p) for p in d["planar"]],
            annotations=dict(d["annotations"]),
            version=int(d["version"]),
        )


_NUM = {"type": "number"}
_VEC3 = {"type": "array", "items": _NUM, "minItems": 3, "maxItems": 3}
_VEC2 = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}
_META = {"type": "object", "additionalProperties": {"type": "string"}}

SCENE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "curves", "meshes", "planar", "annotations"],
    "properties": {
        "version": {"const": SCENE_VERSION},
        "curves": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["points", "closed", "metadata", "contains_infinity"],
                "properties": {
                    "points": {"type": "array", "items": _VEC3, "minItems": 2},
                    "closed": {"type": "boolean"},
                    "metadata": _META,
                    "contains_infinity": {"type": "boolean"},
                },
            },
        },
        "meshes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["vertices", "triangles", "metadata"],
                "properties": {
                    "vertices": {"type": "array", "items": _VEC3, "minItems": 3},
                    "triangles": {
                        "type": "array",
                        "items": {"type": "array", "items": {"type": "integer"},
                                  "minItems": 3, "maxItems": 3},
                        "minItems": 1,
                    },
                    "metadata": _META,
                },
            },
        },
        "planar": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["type", "metadata"],
                "oneOf": [
                    {"properties": {"type": {"const": "circle"}, "center": _VEC2,
                                    "radius": {"type": "number", "exclusiveMinimum": 0},
                                    "metadata": _META},
                     "required": ["type", "center", "radius", "metadata"]},
                    {"properties": {"type": {"const": "line"}, "point": _VEC2,
                                    "direction": _VEC2, "metadata": _META},
                     "required": ["type", "point", "direction", "metadata"]},
                    {"properties": {"type": {"const": "path"},
                                    "points": {"type": "array", "items": _VEC2, "minItems": 2},
                                    "closed": {"type": "boolean"}, "metadata": _META},
                     "required": ["type", "points", "closed", "metadata"]},
                ],
            },
        },
        "annotations": _META,
    },
}


def validate_scene_dict(d: dict) -> None:
    jsonschema.validate(d, SCENE_SCHEMA)


def dumps_canonical(obj) -> bytes:
    """Deterministic JSON bytes: sorted keys, compact separators, newline end."""
    return (json.dumps(obj, sort_keys=True, separators=(",", ":"),
                       allow_nan=False) + "\n").encode("ascii")


def export_json(scene: SceneDocument) -> bytes:
    d = scene.to_dict()
    validate_scene_dict(d)
    return dumps_canonical(d)


def import_json(data: bytes | str) -> SceneDocument:
    return SceneDocument.from_dict(json.loads(data))


def export_obj(scene: SceneDocument) -> bytes:
    """Wavefront OBJ: curves as polylines (l records), meshes as triangles."""
    lines: list[str] = []
    offset = 1  # OBJ indices are 1-based and global
    for i, curve in enumerate(scene.curves):
        lines.append(f"o curve_{i}")
        for p in curve.points:
            lines.append(f"v {fmt9(p[0])} {fmt9(p[1])} {fmt9(p[2])}")
        n = curve.points.shape[0]
        idx = list(range(offset, offset + n))
        if curve.closed:
            idx.append(offset)
        lines.append("l " + " ".join(str(i) for i in idx))
        offset += n
    for i, mesh in enumerate(scene.meshes):
        lines.append(f"o mesh_{i}")
        for p in mesh.vertices:
            lines.append(f"v {fmt9(p[0])} {fmt9(p[1])} {fmt9(p[2])}")
        for t in mesh.triangles:
            lines.append(f"f {t[0] + offset} {t[1] + offset} {t[2] + offset}")
        offset += mesh.vertices.shape[0]
    return ("\n".join(lines) + "\n").encode("ascii")


def _svg_bounds(scene: SceneDocument) -> tuple[float, float, float, float]:
    xs: list[float] = []
    ys: list[float] = []
    for prim in scene.planar:
        if isinstance(prim, PlanarCircle):
            xs += [prim.center[0] - prim.radius, prim.center[0] + prim.radius]
            ys += [prim.center[1] - prim.radius, prim.center[1] + prim.radius]
        elif isinstance(prim, PlanarPath):
            xs += list(prim.points[:, 0])
            ys += list(prim.points[:, 1])
        elif isinstance(prim, PlanarLine):
            xs.append(prim.point[0])
            ys.append(prim.point[1])
    if not xs:
        return -1.0, -1.0, 1.0, 1.0
    return min(xs), min(ys), max(xs), max(ys)


def _clip_line_to_box(point, direction, x0, y0, x1, y1):
    """Segment of an infinite line inside an axis box, or None."""
    p, d = np.asarray(point, float), np.asarray(direction, float)
    tmin, tmax = -np.inf, np.inf
    for axis, (lo, hi) in enumerate(((x0, x1), (y0, y1))):
        if abs(d[axis]) < 1e-300:
            if not (lo <= p[axis] <= hi):
                return None
        else:
            ta = (lo - p[axis]) / d[axis]
            tb = (hi - p[axis]) / d[axis]
            tmin = max(tmin, min(ta, tb))
            tmax = min(tmax, max(ta, tb))
    if tmin >= tmax:
        return None
    return p + tmin * d, p + tmax * d


def export_svg(scene: SceneDocument) -> bytes:
    """SVG of the planar primitives.  Scenes holding 3D content are rejected;
    the view box fits the content with a 5 percent margin and geometry keeps
    its own units (y axis flipped to point up)."""
    if scene.curves or scene.meshes:
        raise ValueError("SVG export is 2D only; the scene has 3D content")
    x0, y0, x1, y1 = _svg_bounds(scene)
    span = max(x1 - x0, y1 - y0, 1e-9)
    margin = 0.05 * span
    x0, y0, x1, y1 = x0 - margin, y0 - margin, x1 + margin, y1 + margin
    width, height = x1 - x0, y1 - y0
    stroke = 0.005 * max(width, height)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{fmt9(x0)} {fmt9(-y1)} '
        f'{fmt9(width)} {fmt9(height)}">',
        f'<g transform="scale(1,-1)" fill="none" stroke="black" '
        f'stroke-width="{fmt9(stroke)}">',
    ]
    for prim in scene.planar:
        if isinstance(prim, PlanarCircle):
            parts.append(f'<circle cx="{fmt9(prim.center[0])}" cy="{fmt9(prim.center[1])}" '
                         f'r="{fmt9(prim.radius)}"/>')
        elif isinstance(prim, PlanarLine):
            seg = _clip_line_to_box(prim.point, prim.direction, x0, y0, x1, y1)
            if seg is not None:
                (ax, ay), (bx, by) = seg
                parts.append(f'<line x1="{fmt9(ax)}" y1="{fmt9(ay)}" '
                             f'x2="{fmt9(bx)}" y2="{fmt9(by)}"/>')
        elif isinstance(prim, PlanarPath):
            coords = " ".join(f"{fmt9(x)},{fmt9(y)}" for x, y in prim.points)
            tag = "polygon" if prim.closed else "polyline"
            parts.append(f'<{tag} points="{coords}"/>')
    parts.append("</g>")
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("ascii")


def sample_torus_mesh(big_radius: float, small_radius: float,
                      n_theta: int = 48, n_psi: int = 24,
                      metadata: dict | None = None) -> Mesh:
    """Triangulated torus of revolution about the x3-axis."""
    if not big_radius > small_radius > 0:
        raise ValueError("need big_radius > small_radius > 0")
    if n_theta < 3 or n_psi < 3:
        raise ValueError("need at least 3 subdivisions each way")
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    psi = 2.0 * np.pi * np.arange(n_psi) / n_psi
    tt, pp = np.meshgrid(theta, psi, indexing="ij")
    ring = big_radius + small_radius * np.cos(pp)
    verts = np.column_stack([
        (ring * np.cos(tt)).ravel(),
        (ring * np.sin(tt)).ravel(),
        (small_radius * np.sin(pp)).ravel(),
    ])
    tris = []
    for i in range(n_theta):
        for j in range(n_psi):
            a = i * n_psi + j
            b = ((i + 1) % n_theta) * n_psi + j
            c = i * n_psi + (j + 1) % n_psi
            d = ((i + 1) % n_theta) * n_psi + (j + 1) % n_psi
            tris.append([a, b, d])
            tris.append([a, d, c])
    return Mesh(verts, np.asarray(tris), metadata or {})


def sample_sphere_mesh(radius: float = 1.0, n_theta: int = 48, n_phi: int = 24,
                       metadata: dict | None = None) -> Mesh:
    """UV sphere centered at the origin (poles as single vertices)."""
    if radius <= 0 or n_theta < 3 or n_phi < 3:
        raise ValueError("need positive radius and at least 3 subdivisions")
    verts = [np.array([0.0, 0.0, radius])]
    for i in range(1, n_phi):
        phi = np.pi * i / n_phi
        for j in range(n_theta):
            theta = 2.0 * np.pi * j / n_theta
            verts.append(radius * np.array([
                np.sin(phi) * np.cos(theta), np.sin(phi) * np.sin(theta), np.cos(phi)]))
    verts.append(np.array([0.0, 0.0, -radius]))
    south = len(verts) - 1
    tris = []
    ring = lambda i, j: 1 + (i - 1) * n_theta + (j % n_theta)
    for j in range(n_theta):
        tris.append([0, ring(1, j), ring(1, j + 1)])
    for i in range(1, n_phi - 1):
        for j in range(n_theta):
            a, b = ring(i, j), ring(i, j + 1)
            c, d = ring(i + 1, j), ring(i + 1, j + 1)
            tris.append([a, c, d])
            tris.append([a, d, b])
    for j in range(n_theta):
        tris.append([south, ring(n_phi - 1, j + 1), ring(n_phi - 1, j)])
    return Mesh(np.asarray(verts), np.asarray(tris), metadata or {})

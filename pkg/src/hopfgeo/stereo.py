"""Stereographic projection of unit spheres and small spherical utilities.

The chart for S^n projects from the last-coordinate pole (0, ..., 0, 1):
a sphere point x maps to y_i = x_i / (1 - x_{n+1}) and the pole itself maps
to INFINITY.  The inverse sends y to ((2y, |y|^2 - 1)) / (|y|^2 + 1).  The
equatorial sphere x_{n+1} = 0 is pointwise fixed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complexplane import GEOM_TOL
from .fitting import subspace_residual
from .inversion import GeneralizedCircle
from .moebius import INFINITY, is_infinity
from .scene import Curve3


@dataclass(frozen=True)
class StereoChart:
    """Stereographic chart of the unit sphere S^dim in R^(dim+1)."""

    dim: int

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError("supported sphere dimensions are 1, 2 and 3")

    @property
    def pole(self) -> np.ndarray:
        p = np.zeros(self.dim + 1)
        p[-1] = 1.0
        return p

    def project(self, p, tol: float = GEOM_TOL):
        """Chart image of a unit vector; the pole maps to INFINITY."""
        p = np.asarray(p, dtype=float)
        if p.shape != (self.dim + 1,):
            raise ValueError(f"expected a point of R^{self.dim + 1}")
        if abs(np.linalg.norm(p) - 1.0) > tol:
            raise ValueError("point is not on the unit sphere")
        if 1.0 - p[-1] <= 1e-12:
            return INFINITY
        return p[:-1] / (1.0 - p[-1])

    def unproject(self, y) -> np.ndarray:
        """Inverse chart; INFINITY maps to the pole."""
        if is_infinity(y):
            return self.pole
        y = np.asarray(y, dtype=float)
        if y.shape != (self.dim,):
            raise ValueError(f"expected a point of R^{self.dim}")
        s = float(y @ y)
        return np.concatenate([2.0 * y, [s - 1.0]]) / (s + 1.0)


CHART_S1 = StereoChart(1)
CHART_S2 = StereoChart(2)
CHART_S3 = StereoChart(3)


def to_riemann(p):
    """S^2 chart image as a complex number (or INFINITY)."""
    y = CHART_S2.project(p)
    if is_infinity(y):
        return INFINITY
    return complex(y[0], y[1])


def from_riemann(z) -> np.ndarray:
    """Unit S^2 point whose chart image is the complex number z (or INFINITY)."""
    if is_infinity(z):
        return CHART_S2.pole
    z = complex(z)
    return CHART_S2.unproject(np.array([z.real, z.imag]))


def arc_distance(p, q) -> float:
    """Great-circle distance between unit vectors (any common dimension)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError("points must share a dimension")
    for v in (p, q):
        if abs(np.linalg.norm(v) - 1.0) > GEOM_TOL:
            raise ValueError("points must be unit vectors")
    return math.acos(min(1.0, max(-1.0, float(p @ q))))


def spherical_triangle_area(alpha: float, beta: float, gamma: float) -> float:
    """Area of a unit-sphere triangle from its interior angles (the angle
    excess alpha + beta + gamma - pi)."""
    excess = float(alpha) + float(beta) + float(gamma) - math.pi
    if excess <= 0:
        raise ValueError("angle sum must exceed pi on the sphere")
    if excess >= 4.0 * math.pi:
        raise ValueError("angle excess cannot reach the full sphere area")
    return excess


def great_circle_image_residual(c: GeneralizedCircle, n: int = 64) -> float:
    """RMS distance of the unprojected locus to the best plane through the
    origin (zero exactly when c is the chart image of a great circle)."""
    zs = c.sample(n)
    pts = np.array([from_riemann(complex(z)) for z in zs])
    return subspace_residual(pts, 2)


def is_great_circle_image(c: GeneralizedCircle, n: int = 64,
                          tol: float = GEOM_TOL) -> bool:
    """Whether the plane locus is the stereographic image of a great circle
    of S^2 (equivalently, whether it meets the unit circle in two antipodal
    points)."""
    return great_circle_image_residual(c, n) <= tol


def hypercube_vertices() -> np.ndarray:
    """The 16 vertices (+-1/2, +-1/2, +-1/2, +-1/2), binary-counter order."""
    signs = np.array([[(i >> k) & 1 for k in range(4)] for i in range(16)])
    return (signs - 0.5)


def hypercube_edges() -> list[tuple[int, int]]:
    """The 32 vertex index pairs at Hamming distance one."""
    edges = []
    for i in range(16):
        for k in range(4):
            j = i ^ (1 << k)
            if i < j:
                edges.append((i, j))
    return edges


def hypercube_scene(samples_per_edge: int = 24) -> list[Curve3]:
    """Hypercube edges pushed to S^3 (radial normalization) and projected to
    R^3 through the S^3 chart.  Each edge becomes an open sampled arc."""
    if samples_per_edge < 2:
        raise ValueError("need at least 2 samples per edge")
    verts = hypercube_vertices()
    t = np.linspace(0.0, 1.0, samples_per_edge)
    curves = []
    for a, b in hypercube_edges():
        seg = np.outer(1.0 - t, verts[a]) + np.outer(t, verts[b])
        seg /= np.linalg.norm(seg, axis=1)[:, None]
        pts = np.array([CHART_S3.project(p) for p in seg])
        curves.append(Curve3(pts, closed=False,
                             metadata={"kind": "hypercube-edge", "edge": f"{a}-{b}"}))
    return curves

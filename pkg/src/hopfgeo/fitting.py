"""Least-squares fits used as measurement tools: subspaces through the
origin, circles in 2D and 3D, tori of revolution, and generalized circles.

Residuals are root-mean-square distances (geometric where cheap, implicit
values for the torus quartic), so exact samples report residuals at machine
precision and noisy samples report roughly the noise scale.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .inversion import GeneralizedCircle


def subspace_residual(points: np.ndarray, dim: int) -> float:
    """RMS distance from the points to the best dim-dimensional linear
    subspace through the origin."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < max(dim + 1, 3):
        raise ValueError("need at least dim+1 points in rows")
    s = np.linalg.svd(pts, compute_uv=False)
    tail = s[dim:]
    return float(np.sqrt(np.sum(tail * tail) / pts.shape[0]))


def fit_circle_2d(xy: np.ndarray) -> tuple[np.ndarray, float, float]:
    """Algebraic (Kasa) circle fit in the plane.

    Returns (center, radius, rms geometric residual).
    """
    pts = np.asarray(xy, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 3:
        raise ValueError("need at least 3 plane points")
    x, y = pts[:, 0], pts[:, 1]
    a = np.column_stack([2 * x, 2 * y, np.ones_like(x)])
    b = x * x + y * y
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    cx, cy, c = sol
    rr = c + cx * cx + cy * cy
    if rr <= 0:
        raise ValueError("degenerate circle fit")
    r = float(np.sqrt(rr))
    center = np.array([cx, cy])
    resid = float(np.sqrt(np.mean((np.hypot(x - cx, y - cy) - r) ** 2)))
    return center, r, resid


@dataclass(frozen=True)
class Circle3Fit:
    center: np.ndarray
    radius: float
    normal: np.ndarray
    residual: float


def fit_circle_3d(points: np.ndarray) -> Circle3Fit:
    """Best-fit circle through 3D points: plane by SVD, then a plane circle
    fit.  Residual is the RMS 3D distance from the points to the circle."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 8:
        raise ValueError("need at least 8 points of shape (n, 3)")
    centroid = pts.mean(axis=0)
    centered = pts - centroid
    _, svals, vt = np.linalg.svd(centered, full_matrices=False)
    if svals[1] <= 1e-12 * max(svals[0], 1.0):
        raise ValueError("points are collinear; no unique circle")
    u, v, normal = vt[0], vt[1], vt[2]
    plane_xy = np.column_stack([centered @ u, centered @ v])
    c2, radius, _ = fit_circle_2d(plane_xy)
    center = centroid + c2[0] * u + c2[1] * v
    rel = pts - center
    h = rel @ normal
    inplane = np.sqrt(np.maximum(np.sum(rel * rel, axis=1) - h * h, 0.0))
    residual = float(np.sqrt(np.mean((inplane - radius) ** 2 + h * h)))
    return Circle3Fit(center, float(radius), normal, residual)


@dataclass(frozen=True)
class TorusFit:
    big_radius: float
    small_radius: float
    residual: float


def torus_implicit(points: np.ndarray, big_radius: float, small_radius: float) -> np.ndarray:
    """Values of (|x|^2 + R^2 - r^2)^2 - 4 R^2 (x1^2 + x2^2) on the points
    (zero on the torus of revolution about the x3-axis)."""
    pts = np.asarray(points, dtype=float)
    ss = np.sum(pts * pts, axis=1)
    cyl = pts[:, 0] ** 2 + pts[:, 1] ** 2
    rr = big_radius * big_radius
    return (ss + rr - small_radius * small_radius) ** 2 - 4.0 * rr * cyl


def fit_torus_of_revolution(points: np.ndarray, axis=(0.0, 0.0, 1.0)) -> TorusFit:
    """Least squares on the torus quartic with unit-weight samples.

    The axis is rotated onto x3 first; the initial guess comes from the
    extremal cylinder radii.  Residual is the RMS of the implicit values.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 64:
        raise ValueError("need at least 64 points of shape (n, 3)")
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if norm == 0:
        raise ValueError("axis must be nonzero")
    axis = axis / norm
    e3 = np.array([0.0, 0.0, 1.0])
    if abs(axis @ e3) < 1.0 - 1e-15:
        w = np.cross(axis, e3)
        s = np.linalg.norm(w)
        c = float(axis @ e3)
        wx = np.array([[0, -w[2], w[1]], [w[2], 0, -w[0]], [-w[1], w[0], 0]])
        rot = np.eye(3) + wx + wx @ wx * ((1 - c) / (s * s))
        pts = pts @ rot.T
    elif axis @ e3 < 0:
        pts = pts * np.array([1.0, -1.0, -1.0])

    cyl = np.hypot(pts[:, 0], pts[:, 1])
    big0 = (cyl.max() + cyl.min()) / 2.0
    small0 = max((cyl.max() - cyl.min()) / 2.0,
                 (pts[:, 2].max() - pts[:, 2].min()) / 2.0, 1e-6)

    def resid(params):
        return torus_implicit(pts, params[0], params[1])

    sol = least_squares(resid, x0=[big0, small0], method="lm", xtol=1e-15, ftol=1e-15)
    big, small = float(abs(sol.x[0])), float(abs(sol.x[1]))
    residual = float(np.sqrt(np.mean(torus_implicit(pts, big, small) ** 2)))
    return TorusFit(big, small, residual)


def fit_generalized_circle(zs: np.ndarray) -> tuple[GeneralizedCircle, float]:
    """Algebraic circle-or-line fit to plane points given as complex values.

    The coefficient 4-vector (alpha, Re beta, Im beta, gamma) is the smallest
    right singular vector of the design matrix [|z|^2, 2x, 2y, 1].  Returns
    the normalized locus and the RMS geometric-style residual |F| / |grad F|.
    """
    zs = np.asarray(zs, dtype=complex).ravel()
    if zs.size < 4:
        raise ValueError("need at least 4 points")
    x, y = zs.real, zs.imag
    design = np.column_stack([x * x + y * y, 2 * x, 2 * y, np.ones_like(x)])
    # Column scaling keeps the SVD well conditioned for far-flung samples.
    col_scale = np.max(np.abs(design), axis=0)
    col_scale[col_scale == 0] = 1.0
    _, _, vt = np.linalg.svd(design / col_scale, full_matrices=False)
    coef = vt[-1] / col_scale
    circ = GeneralizedCircle(coef[0], complex(coef[1], coef[2]), coef[3])
    residual = float(np.sqrt(np.mean(np.asarray(circ.distance(zs)) ** 2)))
    return circ, residual

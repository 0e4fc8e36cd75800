"""Complex arithmetic helpers: polar forms, roots of unity, sampled closed
paths, and winding-number root counting.

The winding number of a sampled closed path about the origin is computed by
summing wrapped argument increments between consecutive samples.  Sampling is
never corrected silently: a sample at the origin, an increment of pi/2 or
more, or a total that lands far from an integer each raise a distinct error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

ARITH_TOL = 1e-12  # default tolerance for pure arithmetic comparisons
GEOM_TOL = 1e-9    # default tolerance for geometric predicates


class PathError(ValueError):
    """Base class for closed-path sampling problems."""


class DegeneratePathError(PathError):
    """A path sample lies on (or numerically at) the origin."""


class UndersampledPathError(PathError):
    """Consecutive samples subtend an angle of pi/2 or more about the origin."""


class WindingResidualError(PathError):
    """Summed increments land too far from an integer multiple of 2*pi."""


@dataclass(frozen=True)
class PolarForm:
    """Polar representation r*exp(i*theta) with theta in (-pi, pi]."""

    r: float
    theta: float


def to_polar(z: complex) -> PolarForm:
    """Polar form of z; the argument of 0 is defined as 0."""
    z = complex(z)
    r = abs(z)
    if r == 0.0:
        return PolarForm(0.0, 0.0)
    theta = math.atan2(z.imag, z.real)
    if theta <= -math.pi:  # atan2 may return -pi for negative-zero imag
        theta = math.pi
    return PolarForm(r, theta)


def from_polar(p: PolarForm) -> complex:
    return complex(p.r * math.cos(p.theta), p.r * math.sin(p.theta))


def roots_of_unity(n: int) -> np.ndarray:
    """The n complex n-th roots of unity, starting at 1, counterclockwise."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError("n must be a positive integer")
    return np.exp(2j * np.pi * np.arange(n) / n)


@dataclass(frozen=True)
class ClosedPath:
    """A closed path sampled at >= 3 points; the last sample joins the first.

    The first sample is not repeated at the end.  Adequacy of the sampling is
    checked by the operations that consume the path, not at construction.
    """

    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        if samples.ndim != 1 or samples.size < 3:
            raise ValueError("a closed path needs at least 3 samples")
        if not np.all(np.isfinite(samples)):
            raise ValueError("path samples must be finite")
        scale = float(np.max(np.abs(samples)))
        if abs(samples[-1] - samples[0]) <= 1e-12 * max(1.0, scale):
            raise ValueError("do not repeat the first sample at the end; "
                             "closure is implicit")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.size

    @classmethod
    def circle(cls, center: complex = 0.0, radius: float = 1.0, n: int = 256) -> "ClosedPath":
        """Counterclockwise circle of given center and radius, n samples."""
        if radius <= 0:
            raise ValueError("radius must be positive")
        t = 2.0 * np.pi * np.arange(n) / n
        return cls(complex(center) + radius * np.exp(1j * t))


def map_path(f: Callable, path: ClosedPath) -> ClosedPath:
    """Image of a closed path under a pointwise map f."""
    try:
        vals = np.asarray(f(path.samples), dtype=complex)
        if vals.shape != path.samples.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([complex(f(z)) for z in path.samples])
    return ClosedPath(vals)


def winding_number(path: ClosedPath, *, origin_tol: float = 1e-12,
                   residual_tol: float = 0.01) -> int:
    """Winding number of the path about the origin.

    Raises DegeneratePathError if a sample sits at the origin,
    UndersampledPathError if any wrapped increment reaches pi/2, and
    WindingResidualError if the increment sum is not close to an integer
    multiple of 2*pi.
    """
    z = path.samples
    scale = float(np.max(np.abs(z)))
    if float(np.min(np.abs(z))) <= origin_tol * max(scale, 1.0):
        raise DegeneratePathError("path passes through the origin")
    increments = np.angle(np.roll(z, -1) / z)
    if float(np.max(np.abs(increments))) >= np.pi / 2:
        raise UndersampledPathError(
            "argument increment of pi/2 or more between consecutive samples")
    total = float(np.sum(increments)) / (2.0 * np.pi)
    k = round(total)
    if abs(total - k) >= residual_tol:
        raise WindingResidualError(
            f"winding sum {total} is not near an integer")
    return int(k)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with complex coefficients, ascending order (c0 + c1 z + ...)."""

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if coeffs.ndim != 1 or coeffs.size < 1:
            raise ValueError("need at least one coefficient")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        if coeffs.size > 1 and coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        return npoly.polyval(z, self.coeffs)

    @classmethod
    def from_roots(cls, roots: Sequence[complex], lead: complex = 1.0) -> "Polynomial":
        return cls(lead * npoly.polyfromroots(np.asarray(roots, dtype=complex)))


def outer_root_radius(p: Polynomial) -> float:
    """A radius guaranteed to enclose every root: 1 + sum|c_i| / |lead|."""
    c = p.coeffs
    return 1.0 + float(np.sum(np.abs(c[:-1]))) / abs(c[-1])


def count_roots_by_winding(p: Polynomial, radius: float, n_samples: int = 2048) -> int:
    """Number of roots of p inside |z| = radius, counted with multiplicity.

    Maps the circle through p and takes the winding number of the image about
    the origin (argument principle).  A root on the circle surfaces as a
    DegeneratePathError.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    circle = ClosedPath.circle(0.0, radius, n_samples)
    return winding_number(map_path(p, circle))

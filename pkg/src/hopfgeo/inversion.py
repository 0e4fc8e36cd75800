"""Inversion in circles and spheres, algebraic circle/line loci, and the
two-family Apollonian configuration.

A circle or line in the plane is stored by the real coefficients of
alpha*|z|^2 + conj(beta)*z + beta*conj(z) + gamma = 0 (alpha, gamma real,
beta complex).  The alpha = 1 normalization gives center -beta and radius
sqrt(|beta|^2 - gamma); alpha = 0 with |beta| = 1 is a line.  This form is
closed under translation, complex scaling, and unit inversion, which is how
invert_circle transports a locus through an arbitrary inversion without any
sampling or fitting.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complexplane import GEOM_TOL
from .moebius import INFINITY, MoebiusMap, is_infinity


class DisjointLociError(ValueError):
    """Angle requested between loci that do not intersect."""


@dataclass(frozen=True)
class Sphere:
    """Sphere (or circle) of positive radius in R^n, n in {2, 3, 4}."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        center = np.asarray(self.center, dtype=float)
        if center.ndim != 1 or center.size not in (2, 3, 4):
            raise ValueError("center must be a 2-, 3- or 4-vector")
        if not np.all(np.isfinite(center)):
            raise ValueError("center must be finite")
        radius = float(self.radius)
        if not (radius > 0 and math.isfinite(radius)):
            raise ValueError("radius must be positive and finite")
        center.setflags(write=False)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)

    @property
    def dim(self) -> int:
        return self.center.size

    @classmethod
    def from_complex(cls, center: complex, radius: float) -> "Sphere":
        center = complex(center)
        return cls(np.array([center.real, center.imag]), radius)

    @property
    def center_complex(self) -> complex:
        if self.dim != 2:
            raise ValueError("center_complex needs a 2-dimensional sphere")
        return complex(self.center[0], self.center[1])

    def invert(self, p):
        """Inversion image of a point.  The center maps to INFINITY and back."""
        if is_infinity(p):
            return self.center.copy()
        if isinstance(p, (complex, float, int)) and self.dim == 2:
            z = complex(p)
            p = np.array([z.real, z.imag])
            as_complex = True
        else:
            p = np.asarray(p, dtype=float)
            as_complex = False
        if p.shape != self.center.shape:
            raise ValueError("point dimension does not match the sphere")
        d = p - self.center
        dd = float(d @ d)
        if math.sqrt(dd) <= 1e-14 * self.radius:
            return INFINITY
        out = self.center + (self.radius * self.radius / dd) * d
        if as_complex:
            return complex(out[0], out[1])
        return out


def invert_point(s: Sphere, p):
    """Inversion of p in s: center + (r/|p-center|)^2 (p - center)."""
    return s.invert(p)


@dataclass(frozen=True)
class GeneralizedCircle:
    """Circle or line as the zero locus of alpha*|z|^2 + 2*Re(conj(beta)*z) + gamma.

    Construction normalizes: circles get alpha = 1, lines get alpha = 0 and
    |beta| = 1 with beta's first nonzero part (real, then imaginary) positive.
    """

    alpha: float
    beta: complex
    gamma: float

    def __post_init__(self):
        alpha = float(self.alpha)
        beta = complex(self.beta)
        gamma = float(self.gamma)
        scale = max(abs(alpha), abs(beta), abs(gamma))
        if scale == 0.0 or not math.isfinite(scale):
            raise ValueError("coefficients must be finite and not all zero")
        if abs(alpha) <= 1e-11 * scale:
            # Line branch: require a direction, normalize |beta| = 1.
            if abs(beta) <= 1e-11 * scale:
                raise ValueError("degenerate coefficients (no locus)")
            beta, gamma = beta / abs(beta), gamma / abs(beta)
            if beta.real < -1e-12 or (abs(beta.real) <= 1e-12 and beta.imag < 0):
                beta, gamma = -beta, -gamma
            alpha = 0.0
        else:
            beta, gamma = beta / alpha, gamma / alpha
            alpha = 1.0
            if abs(beta) ** 2 - gamma <= 0:
                raise ValueError("empty or single-point locus")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)

    # -- constructors ------------------------------------------------------

    @classmethod
    def circle(cls, center: complex, radius: float) -> "GeneralizedCircle":
        if radius <= 0:
            raise ValueError("radius must be positive")
        center = complex(center)
        return cls(1.0, -center, abs(center) ** 2 - radius * radius)

    @classmethod
    def line(cls, point: complex, direction: complex) -> "GeneralizedCircle":
        """Line through a point with the given direction."""
        direction = complex(direction)
        if abs(direction) == 0:
            raise ValueError("direction must be nonzero")
        n = 1j * direction / abs(direction)
        point = complex(point)
        return cls(0.0, n, -2.0 * (n.conjugate() * point).real)

    @classmethod
    def from_sphere(cls, s: Sphere) -> "GeneralizedCircle":
        return cls.circle(s.center_complex, s.radius)

    # -- basic queries -----------------------------------------------------

    @property
    def is_line(self) -> bool:
        return self.alpha == 0.0

    @property
    def center(self) -> complex:
        if self.is_line:
            raise ValueError("a line has no center")
        return -self.beta

    @property
    def radius(self) -> float:
        if self.is_line:
            raise ValueError("a line has no radius")
        return math.sqrt(abs(self.beta) ** 2 - self.gamma)

    @property
    def line_point(self) -> complex:
        """Point of a line closest to the origin."""
        if not self.is_line:
            raise ValueError("not a line")
        return -self.gamma * self.beta / (2.0 * abs(self.beta) ** 2)

    @property
    def line_direction(self) -> complex:
        if not self.is_line:
            raise ValueError("not a line")
        return 1j * self.beta

    def evaluate(self, z):
        """Algebraic value alpha*|z|^2 + 2 Re(conj(beta) z) + gamma."""
        z = np.asarray(z, dtype=complex)
        val = (self.alpha * (z.real ** 2 + z.imag ** 2)
               + 2.0 * (self.beta.conjugate() * z).real + self.gamma)
        return val if val.shape else float(val)

    def normal_at(self, z: complex) -> complex:
        """Gradient direction of the defining function at z (as a complex number)."""
        return self.alpha * complex(z) + self.beta

    def distance(self, z) -> float:
        """Approximate geometric distance: |F(z)| / |grad F(z)|."""
        z = np.asarray(z, dtype=complex)
        grad = 2.0 * np.abs(self.alpha * z + self.beta)
        val = np.abs(self.evaluate(z)) / grad
        return val if val.shape else float(val)

    def contains(self, z, tol: float = GEOM_TOL) -> bool:
        return bool(np.all(self.distance(z) <= tol))

    def sample(self, n: int = 64) -> np.ndarray:
        """n points on the locus.  Lines are swept by a tangent substitution so
        the samples reach arbitrarily far out along both ends."""
        if n < 3:
            raise ValueError("need at least 3 samples")
        if self.is_line:
            s = np.linspace(-np.pi / 2, np.pi / 2, n + 2)[1:-1]
            return self.line_point + self.line_direction * np.tan(s)
        t = 2.0 * np.pi * np.arange(n) / n
        return self.center + self.radius * np.exp(1j * t)

    def isclose(self, other: "GeneralizedCircle", tol: float = GEOM_TOL) -> bool:
        if self.is_line != other.is_line:
            return False
        if self.is_line:
            return (abs(self.beta - other.beta) <= tol
                    and abs(self.gamma - other.gamma) <= tol * max(1.0, abs(self.gamma)))
        scale = max(1.0, self.radius, abs(self.center))
        return (abs(self.center - other.center) <= tol * scale
                and abs(self.radius - other.radius) <= tol * scale)

    # -- coefficient transport (images under plane maps) --------------------

    def translated(self, t: complex) -> "GeneralizedCircle":
        """Image under z -> z + t."""
        t = complex(t)
        return GeneralizedCircle(
            self.alpha,
            self.beta - self.alpha * t,
            self.alpha * abs(t) ** 2 - 2.0 * (self.beta.conjugate() * t).real + self.gamma,
        )

    def scaled(self, c: complex) -> "GeneralizedCircle":
        """Image under z -> c z, c != 0."""
        c = complex(c)
        if c == 0:
            raise ValueError("scale factor must be nonzero")
        return GeneralizedCircle(self.alpha, self.beta * c, self.gamma * abs(c) ** 2)

    def unit_inverted(self) -> "GeneralizedCircle":
        """Image under inversion in the unit circle at the origin (alpha and
        gamma swap)."""
        return GeneralizedCircle(self.gamma, self.beta, self.alpha)


def invert_circle(s: Sphere, k: GeneralizedCircle) -> GeneralizedCircle:
    """Image of the locus k under inversion in the plane circle s.

    Purely algebraic: conjugate the unit inversion by the translation and
    scaling that carry s to the unit circle.  Circles through the center of s
    come back as lines and vice versa.
    """
    if s.dim != 2:
        raise ValueError("invert_circle needs a plane circle")
    a = s.center_complex
    r = s.radius
    return (k.translated(-a).scaled(1.0 / r).unit_inverted()
            .scaled(r).translated(a))


def _inversion_matrix(s: Sphere) -> tuple[complex, complex, complex, complex]:
    # i_s(z) = M(conj(z)) for the Moebius matrix M = [[a, r^2 - |a|^2], [1, -conj(a)]].
    a = s.center_complex
    return (a, s.radius ** 2 - abs(a) ** 2, 1.0, -a.conjugate())


def compose_inversions(c: Sphere, k: Sphere) -> MoebiusMap:
    """The Moebius map z -> i_c(i_k(z)) (two anti-conformal inversions compose
    to a conformal map)."""
    if c.dim != 2 or k.dim != 2:
        raise ValueError("compose_inversions needs plane circles")
    ca, cb, cc, cd = _inversion_matrix(c)
    ka, kb, kc, kd = (w.conjugate() for w in _inversion_matrix(k))
    return MoebiusMap(ca * ka + cb * kc, ca * kb + cb * kd,
                      cc * ka + cd * kc, cc * kb + cd * kd)


def intersect(c1: GeneralizedCircle, c2: GeneralizedCircle) -> list[complex]:
    """Intersection points of two loci (0, 1 or 2 points; [] when disjoint,
    parallel, or identical)."""
    if c1.is_line and not c2.is_line:
        c1, c2 = c2, c1
    if not c1.is_line and not c2.is_line:
        # Radical line: subtract the two alpha = 1 forms.
        db = c1.beta - c2.beta
        dg = c1.gamma - c2.gamma
        if abs(db) <= 1e-13 * max(1.0, abs(c1.beta), abs(c2.beta)):
            return []  # concentric
        radical = GeneralizedCircle(0.0, db, dg)
        return intersect(c1, radical)
    if c1.is_line and c2.is_line:
        # Two lines: solve 2 Re(conj(beta) z) = -gamma as a real 2x2 system.
        m = np.array([[2 * c1.beta.real, 2 * c1.beta.imag],
                      [2 * c2.beta.real, 2 * c2.beta.imag]])
        rhs = np.array([-c1.gamma, -c2.gamma])
        if abs(np.linalg.det(m)) <= 1e-13:
            return []
        x, y = np.linalg.solve(m, rhs)
        return [complex(x, y)]
    # c1 circle, c2 line: foot of the center on the line, then the half-chord.
    center, r = c1.center, c1.radius
    h = c2.evaluate(center) / 2.0        # signed distance (|beta| = 1, |grad| = 2)
    foot = center - h * c2.beta
    hc2 = r * r - h * h
    tol = 1e-13 * max(1.0, r * r)
    if hc2 < -tol:
        return []
    if hc2 <= tol:
        return [foot]
    hc = math.sqrt(hc2)
    d = 1j * c2.beta
    return [foot - hc * d, foot + hc * d]


def circles_orthogonal(c1: GeneralizedCircle, c2: GeneralizedCircle,
                       tol: float = GEOM_TOL) -> tuple[float, bool]:
    """(intersection angle in [0, pi/2], whether it is a right angle).

    The angle between the tangent lines equals the angle between the normals
    alpha*z + beta at a common point.  Raises DisjointLociError when the loci
    do not meet.
    """
    pts = intersect(c1, c2)
    if not pts:
        raise DisjointLociError("the loci do not intersect")
    z = pts[0]
    n1, n2 = c1.normal_at(z), c2.normal_at(z)
    denom = abs(n1) * abs(n2)
    if denom == 0:
        raise ValueError("degenerate normal at the intersection point")
    cosang = abs((n1 * n2.conjugate()).real) / denom
    angle = math.acos(min(1.0, max(-1.0, cosang)))
    return angle, abs(angle - math.pi / 2) <= tol


def apollonian_families(p: complex, p2: complex, n_elliptic: int = 8,
                        n_hyperbolic: int = 8
                        ) -> tuple[list[GeneralizedCircle], list[GeneralizedCircle]]:
    """The elliptic family (circles through both points) and hyperbolic family
    (circles inverting p to p2) for a distinct point pair.

    Each family starts with its degenerate straight-line member: the line
    through the points (elliptic) and their perpendicular bisector
    (hyperbolic).  Elliptic circle centers sit at uniformly spaced stations on
    the bisector; hyperbolic radii grow geometrically, alternating sides.
    Every elliptic member meets every hyperbolic member at a right angle.
    """
    p, p2 = complex(p), complex(p2)
    if abs(p - p2) <= 1e-12 * max(1.0, abs(p), abs(p2)):
        raise ValueError("the two points must be distinct")
    if n_elliptic < 1 or n_hyperbolic < 1:
        raise ValueError("family sizes must be at least 1")
    mid = (p + p2) / 2.0
    u = (p2 - p) / abs(p2 - p)   # unit vector along the point pair
    v = 1j * u                   # unit vector along the perpendicular bisector
    d = abs(p2 - p) / 2.0

    elliptic: list[GeneralizedCircle] = [GeneralizedCircle.line(p, u)]
    k = n_elliptic - 1
    for i in range(k):
        t = d * (i - (k - 1) / 2.0)
        elliptic.append(GeneralizedCircle.circle(mid + t * v, math.hypot(d, t)))

    hyperbolic: list[GeneralizedCircle] = [GeneralizedCircle.line(mid, v)]
    k = n_hyperbolic - 1
    for i in range(k):
        r = d * 1.5 ** (i // 2)
        side = 1.0 if i % 2 == 0 else -1.0
        center = mid + side * math.sqrt(d * d + r * r) * u
        hyperbolic.append(GeneralizedCircle.circle(center, r))
    return elliptic, hyperbolic

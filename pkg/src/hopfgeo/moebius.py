"""Points of the extended complex plane and Moebius transformations.

A point is either a Python complex number or the INFINITY singleton.  A
Moebius map z -> (az + b)/(cz + d) is stored by its coefficient matrix; maps
that differ by a nonzero scalar are the same transformation, and canonical()
scales the determinant to 1 with a deterministic sign choice so equal maps
compare equal entrywise.
"""
from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

from .complexplane import GEOM_TOL


class _Infinity:
    """The point at infinity of the extended complex plane (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()

# A RiemannPoint is `complex | _Infinity`; plain complex values are used
# directly so finite arithmetic stays ordinary Python arithmetic.


def is_infinity(p) -> bool:
    return p is INFINITY


def riemann_close(p, q, tol: float = GEOM_TOL) -> bool:
    """Equality up to tolerance; INFINITY equals only INFINITY."""
    pinf, qinf = is_infinity(p), is_infinity(q)
    if pinf or qinf:
        return pinf and qinf
    p, q = complex(p), complex(q)
    return abs(p - q) <= tol * max(1.0, abs(p), abs(q))


class DegenerateMapError(ValueError):
    """Coefficient matrix has (numerically) zero determinant."""


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (a z + b) / (c z + d) with ad - bc != 0."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        if scale == 0.0 or abs(self.det) <= 1e-12 * scale * scale:
            raise DegenerateMapError("ad - bc is numerically zero")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    def apply(self, p):
        """Image of a point; INFINITY maps to a/c (or stays at INFINITY when c = 0)."""
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        if is_infinity(p):
            if abs(self.c) <= 1e-14 * scale:
                return INFINITY
            return self.a / self.c
        p = complex(p)
        num = self.a * p + self.b
        den = self.c * p + self.d
        if abs(den) <= 1e-14 * scale * max(1.0, abs(p)):
            return INFINITY
        return num / den

    def __call__(self, p):
        return self.apply(p)

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """self after other; coefficient matrices multiply in the same order."""
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def canonical(self) -> "MoebiusMap":
        """Scale so det = 1; the first nonzero coefficient (scanning a, b, c, d)
        gets positive real part, with positive imaginary part breaking ties."""
        s = cmath.sqrt(self.det)
        a, b, c, d = self.a / s, self.b / s, self.c / s, self.d / s
        scale = max(abs(a), abs(b), abs(c), abs(d))
        tol = 1e-12 * scale
        for e in (a, b, c, d):
            if abs(e) > tol:
                flip = e.real < -tol or (abs(e.real) <= tol and e.imag < 0)
                if flip:
                    a, b, c, d = -a, -b, -c, -d
                break
        return MoebiusMap(a, b, c, d)

    def isclose(self, other: "MoebiusMap", tol: float = GEOM_TOL) -> bool:
        """Same transformation up to the scalar-multiple ambiguity."""
        m, o = self.canonical(), other.canonical()
        def err(sign):
            return max(abs(m.a - sign * o.a), abs(m.b - sign * o.b),
                       abs(m.c - sign * o.c), abs(m.d - sign * o.d))
        return min(err(1.0), err(-1.0)) <= tol


def from_three_points(z1, z2, z3) -> MoebiusMap:
    """The unique map sending (z1, z2, z3) to (0, 1, INFINITY)."""
    pts = (z1, z2, z3)
    for p, q in itertools.combinations(pts, 2):
        if riemann_close(p, q, 1e-12):
            raise ValueError("the three points must be pairwise distinct")
    if sum(is_infinity(p) for p in pts) > 1:
        raise ValueError("at most one point may be INFINITY")
    if is_infinity(z1):
        return MoebiusMap(0, z2 - z3, 1, -z3)
    if is_infinity(z2):
        return MoebiusMap(1, -z1, 1, -z3)
    if is_infinity(z3):
        return MoebiusMap(1, -z1, 0, z2 - z1)
    return MoebiusMap(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))


def between_triples(sources, targets) -> MoebiusMap:
    """The unique map sending one distinct triple onto another, in order."""
    f = from_three_points(*sources)
    g = from_three_points(*targets)
    return g.inverse().compose(f)


def cross_ratio(a, b, c, d) -> complex:
    """(a, b; c, d) = ((a-c)(b-d)) / ((a-d)(b-c)), with the factors containing
    an INFINITY input cancelled in the limit.  At most one input may be
    INFINITY and the four points must be pairwise distinct."""
    pts = (a, b, c, d)
    if sum(is_infinity(p) for p in pts) > 1:
        raise ValueError("at most one point may be INFINITY")
    for p, q in itertools.combinations(pts, 2):
        if riemann_close(p, q, 1e-12):
            raise ValueError("cross ratio needs pairwise distinct points")
    if is_infinity(a):
        return (b - d) / (b - c)
    if is_infinity(b):
        return (a - c) / (a - d)
    if is_infinity(c):
        return (b - d) / (a - d)
    if is_infinity(d):
        return (a - c) / (b - c)
    return ((a - c) * (b - d)) / ((a - d) * (b - c))


def cross_ratio_orbit(lam: complex, tol: float = GEOM_TOL) -> list[complex]:
    """Distinct cross-ratio values over all 24 orderings of one witness
    quadruple with cross ratio lam, sorted by (real, imag).

    Generic lam gives 6 values; lam = -1, 1/2, 2 (harmonic) gives 3.
    """
    lam = complex(lam)
    if riemann_close(lam, 0.0, 1e-12) or riemann_close(lam, 1.0, 1e-12):
        raise ValueError("lam must avoid 0 and 1 (degenerate quadruples)")
    witness = (INFINITY, 0.0, 1.0, lam)  # cross_ratio(INF, 0, 1, lam) = lam
    values: list[complex] = []
    for perm in itertools.permutations(witness):
        v = cross_ratio(*perm)
        if not any(riemann_close(v, w, tol) for w in values):
            values.append(v)
    return sorted(values, key=lambda v: (v.real, v.imag))

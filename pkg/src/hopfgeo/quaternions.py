"""Quaternion algebra, rotations by conjugation, the SU(2) matrix form, and
the two-sided S^3 x S^3 action on R^4.

The basis satisfies ij = k, jk = i, ki = j (and the reversed products carry
minus signs).  Rotations come in two conjugation flavors:

    rotate_right(q, p) = q^{-1} p q        rotate_left(q, p) = q p q^{-1}

For unit q = cos(theta) + u sin(theta) both fix the axis u and turn pure
vectors perpendicular to u by 2*theta; they turn in opposite senses
(rotate_left is the right-handed rotation about u, and
rotate_left(q, .) == rotate_right(conj(q), .)).  Composition follows
rotate_right(q2, rotate_right(q1, p)) = rotate_right(q1 q2, p).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ARITH_TOL = 1e-12
UNIT_TOL = 1e-9


@dataclass(frozen=True)
class Quaternion:
    """q = a + b i + c j + d k with real components."""

    a: float
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError("components must be finite")
            object.__setattr__(self, name, v)

    # -- construction --------------------------------------------------------

    @classmethod
    def from_pure(cls, v) -> "Quaternion":
        v = np.asarray(v, dtype=float)
        if v.shape != (3,):
            raise ValueError("expected a 3-vector")
        return cls(0.0, v[0], v[1], v[2])

    # -- components ----------------------------------------------------------

    @property
    def real(self) -> float:
        return self.a

    def pure(self) -> np.ndarray:
        """The (b, c, d) vector part."""
        return np.array([self.b, self.c, self.d])

    def components(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    # -- algebra ------------------------------------------------------------

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a + other.a, self.b + other.b,
                          self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a - other.a, self.b - other.b,
                          self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a1, b1, c1, d1 = self.a, self.b, self.c, self.d
            a2, b2, c2, d2 = other.a, other.b, other.c, other.d
            return Quaternion(
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            )
        if isinstance(other, (int, float)):
            return Quaternion(self.a * other, self.b * other,
                              self.c * other, self.d * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self * (1.0 / other)
        return NotImplemented

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm_sq(self) -> float:
        return self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    __abs__ = norm

    def inverse(self) -> "Quaternion":
        """conj(q) / |q|^2; raises on the zero quaternion."""
        nn = self.norm_sq()
        if nn == 0.0:
            raise ZeroDivisionError("the zero quaternion has no inverse")
        return self.conj() * (1.0 / nn)

    def isclose(self, other: "Quaternion", tol: float = ARITH_TOL) -> bool:
        return float(np.max(np.abs(self.components() - other.components()))) <= tol


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


class UnitQuaternion(Quaternion):
    """A quaternion renormalized to |q| = 1 at construction."""

    def __post_init__(self):
        super().__post_init__()
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero quaternion")
        if abs(n - 1.0) > 0.0:
            for name in ("a", "b", "c", "d"):
                object.__setattr__(self, name, getattr(self, name) / n)


def from_axis_angle(axis, angle: float) -> UnitQuaternion:
    """cos(angle/2) + u sin(angle/2) for the unit axis u."""
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,):
        raise ValueError("axis must be a 3-vector")
    n = np.linalg.norm(axis)
    if n == 0.0:
        raise ValueError("axis must be nonzero")
    u = axis / n
    half = float(angle) / 2.0
    s = math.sin(half)
    return UnitQuaternion(math.cos(half), u[0] * s, u[1] * s, u[2] * s)


def axis_angle(q: Quaternion, tol: float = UNIT_TOL) -> tuple[np.ndarray, float]:
    """Canonical (axis, angle) of a unit quaternion.

    angle lies in [0, 2*pi); the axis is flipped so its first nonzero
    component is positive, which makes q and -q canonicalize identically.
    Near-identity input returns axis (1, 0, 0) and angle 0.
    """
    if abs(q.norm() - 1.0) > tol:
        raise ValueError("axis_angle needs a unit quaternion")
    v = q.pure()
    s = float(np.linalg.norm(v))
    if s < 1e-9:
        return np.array([1.0, 0.0, 0.0]), 0.0
    axis = v / s
    angle = 2.0 * math.atan2(s, q.a)  # in (0, 2*pi)
    for comp in axis:
        if abs(comp) > 1e-12:
            if comp < 0:
                axis = -axis
                angle = 2.0 * math.pi - angle
            break
    return axis, angle % (2.0 * math.pi)


def _conjugate(q: Quaternion, p, inverse_first: bool) -> np.ndarray:
    if q.norm_sq() == 0.0:
        raise ValueError("rotation needs a nonzero quaternion")
    pq = Quaternion.from_pure(p)
    out = (q.inverse() * pq * q) if inverse_first else (q * pq * q.inverse())
    scale = max(1.0, float(np.linalg.norm(pq.pure())))
    if abs(out.a) > 1e-9 * scale:
        raise ValueError("conjugation of a pure quaternion left a real part")
    return out.pure()


def rotate_right(q: Quaternion, p) -> np.ndarray:
    """q^{-1} p q acting on a pure vector p (scale of q does not matter)."""
    return _conjugate(q, p, inverse_first=True)


def rotate_left(q: Quaternion, p) -> np.ndarray:
    """q p q^{-1} acting on a pure vector p; equals rotate_right(conj(q), p)."""
    return _conjugate(q, p, inverse_first=False)


def to_su2(q: Quaternion) -> np.ndarray:
    """The 2x2 complex matrix [[z1, conj(z2)], [-z2, conj(z1)]] with
    z1 = a + b i and z2 = c - d i.  With that pairing quaternion products
    map to matrix products in the same order and det = |q|^2.  (Pairing
    z2 = c + d i instead fits the same matrix shape but reverses products:
    an anti-homomorphism.)"""
    z1 = complex(q.a, q.b)
    z2 = complex(q.c, -q.d)
    return np.array([[z1, z2.conjugate()], [-z2, z1.conjugate()]])


def from_su2(m: np.ndarray, tol: float = 1e-9) -> Quaternion:
    """Inverse of to_su2; validates the structural constraints."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    scale = max(1.0, float(np.max(np.abs(m))))
    if (abs(m[0, 0] - m[1, 1].conjugate()) > tol * scale
            or abs(m[0, 1] + m[1, 0].conjugate()) > tol * scale):
        raise ValueError("matrix is not of the quaternion form")
    z1, z2 = m[0, 0], -m[1, 0]
    return Quaternion(z1.real, z1.imag, z2.real, -z2.imag)


def so4_action(g: Quaternion, h: Quaternion, q: Quaternion,
               tol: float = UNIT_TOL) -> Quaternion:
    """The rotation of R^4 = quaternions given by q -> g q h for unit g, h.
    (g, h) and (-g, -h) act identically."""
    if abs(g.norm() - 1.0) > tol or abs(h.norm() - 1.0) > tol:
        raise ValueError("so4_action needs unit quaternions g and h")
    return g * q * h

"""Geometry on the unit sphere and the Riemann sphere.

Stereographic coordinates are taken from the south pole, so the north pole
(+z) maps to 0 and the south pole (-z) maps to the point at infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    """Shared default tolerances (absolute unless stated)."""

    geometry: float = 1e-12
    angle: float = 1e-12
    # relative threshold below which leading/trailing polynomial
    # coefficients are treated as zero
    coefficient: float = 1e-13
    reality: float = 1e-8
    pairing: float = 1e-8
    cluster: float = 1e-4


TOL = Tolerances()


@dataclass(frozen=True)
class UnitVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if n == 0.0 or not math.isfinite(n):
            raise ValueError("cannot normalize a zero or non-finite vector")
        if abs(n - 1.0) > TOL.geometry:
            object.__setattr__(self, "x", self.x / n)
            object.__setattr__(self, "y", self.y / n)
            object.__setattr__(self, "z", self.z / n)

    @classmethod
    def from_array(cls, v) -> UnitVector:
        x, y, z = (float(c) for c in v)
        return cls(x, y, z)

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> UnitVector:
        st = math.sin(theta)
        return cls(st * math.cos(phi), st * math.sin(phi), math.cos(theta))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: UnitVector) -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def __neg__(self) -> UnitVector:
        return UnitVector(-self.x, -self.y, -self.z)

    def to_stereo(self) -> StereoPoint:
        return stereo_from_vector(self.as_array())


@dataclass(frozen=True)
class StereoPoint:
    """A point of the Riemann sphere: a finite complex number or infinity."""

    zeta: complex = 0j
    at_infinity: bool = False

    def __post_init__(self):
        if self.at_infinity:
            object.__setattr__(self, "zeta", 0j)
        else:
            z = complex(self.zeta)
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError("finite StereoPoint needs a finite value; use INFINITY")
            object.__setattr__(self, "zeta", z)

    @classmethod
    def infinity(cls) -> StereoPoint:
        return INFINITY

    @property
    def is_finite(self) -> bool:
        return not self.at_infinity

    def unit_vector(self) -> UnitVector:
        return UnitVector.from_array(vector_from_stereo(self))

    def __repr__(self) -> str:
        return "StereoPoint(inf)" if self.at_infinity else f"StereoPoint({self.zeta!r})"


INFINITY = StereoPoint(0j, True)


def as_stereo(p) -> StereoPoint:
    """Coerce a complex number (or ``None``/``inf`` for infinity) to a StereoPoint."""
    if isinstance(p, StereoPoint):
        return p
    if p is None:
        return INFINITY
    z = complex(p)
    if math.isinf(z.real) or math.isinf(z.imag):
        return INFINITY
    return StereoPoint(z)


def stereo_from_angles(theta: float, phi: float, tol: float = TOL.angle) -> StereoPoint:
    if abs(theta - math.pi) <= tol:
        return INFINITY
    return StereoPoint(complex(math.cos(phi), math.sin(phi)) * math.tan(theta / 2))


def angles_from_stereo(p) -> tuple[float, float]:
    """Polar and azimuthal angles of a Riemann-sphere point.

    The azimuth is reported in [0, 2*pi) and is 0 at both poles.
    """
    p = as_stereo(p)
    if p.at_infinity:
        return math.pi, 0.0
    z = p.zeta
    r = abs(z)
    if r == 0.0:
        return 0.0, 0.0
    phi = math.atan2(z.imag, z.real) % (2 * math.pi)
    if phi >= 2 * math.pi:
        phi = 0.0
    return 2 * math.atan(r), phi


def antipode(p) -> StereoPoint:
    p = as_stereo(p)
    if p.at_infinity:
        return StereoPoint(0j)
    if p.zeta == 0:
        return INFINITY
    w = -1 / p.zeta.conjugate()
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        return INFINITY  # subnormal input
    return StereoPoint(w)


def chordal_distance(p, q) -> float:
    """Euclidean distance between the points of the unit sphere above p and q."""
    p, q = as_stereo(p), as_stereo(q)
    if p.at_infinity and q.at_infinity:
        return 0.0
    if p.at_infinity or q.at_infinity:
        z = q.zeta if p.at_infinity else p.zeta
        return 2.0 / math.hypot(1.0, abs(z))
    d = 2.0 * abs(p.zeta - q.zeta)
    return min(2.0, d / math.hypot(1.0, abs(p.zeta)) / math.hypot(1.0, abs(q.zeta)))


def vector_from_stereo(p) -> np.ndarray:
    p = as_stereo(p)
    if p.at_infinity:
        return np.array([0.0, 0.0, -1.0])
    z = p.zeta
    if abs(z) > 1:
        # work in 1/zeta so huge |zeta| cannot overflow
        w = 1 / z
        b = abs(w) ** 2
        xy = 2 * w.conjugate() / (1 + b)
        return np.array([xy.real, xy.imag, (b - 1) / (1 + b)])
    a = abs(z) ** 2
    w = 2 * z / (1 + a)
    return np.array([w.real, w.imag, (1 - a) / (1 + a)])


def stereo_from_vector(v) -> StereoPoint:
    x, y, z = (float(c) for c in v)
    n = math.sqrt(x * x + y * y + z * z)
    x, y, z = x / n, y / n, z / n
    if z >= 0:
        return StereoPoint(complex(x, y) / (1 + z))
    w = complex(x, -y)
    if w == 0:
        return INFINITY
    return StereoPoint((1 - z) / w)


def _rz(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _ry(b: float) -> np.ndarray:
    c, s = math.cos(b), math.sin(b)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


@dataclass(frozen=True)
class EulerRotation:
    """Active z-y-z rotation Rz(alpha) Ry(beta) Rz(gamma)."""

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    @classmethod
    def identity(cls) -> EulerRotation:
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def to_direction(cls, theta: float, phi: float) -> EulerRotation:
        """The rotation Rz(phi) Ry(theta) carrying +z to u(theta, phi)."""
        return cls(phi, theta, 0.0)

    @classmethod
    def from_matrix(cls, m) -> EulerRotation:
        m = np.asarray(m, dtype=float)
        cb = min(1.0, max(-1.0, m[2, 2]))
        sb = math.hypot(m[0, 2], m[1, 2])
        if sb > 1e-12:
            beta = math.atan2(sb, m[2, 2])
            alpha = math.atan2(m[1, 2], m[0, 2])
            gamma = math.atan2(m[2, 1], -m[2, 0])
        elif cb > 0:
            beta, gamma = 0.0, 0.0
            alpha = math.atan2(m[1, 0], m[0, 0])
        else:
            beta, gamma = math.pi, 0.0
            alpha = math.atan2(-m[1, 0], -m[0, 0])
        return cls(alpha, beta, gamma)

    def matrix(self) -> np.ndarray:
        return _rz(self.alpha) @ _ry(self.beta) @ _rz(self.gamma)

    def inverse(self) -> EulerRotation:
        return EulerRotation(-self.gamma, -self.beta, -self.alpha)

    def compose(self, other: EulerRotation) -> EulerRotation:
        """Rotation applying ``other`` first, then ``self``."""
        return EulerRotation.from_matrix(self.matrix() @ other.matrix())


def rotate_vector(rot: EulerRotation, u) -> UnitVector:
    v = u.as_array() if isinstance(u, UnitVector) else np.asarray(u, dtype=float)
    return UnitVector.from_array(rot.matrix() @ v)


def rotate_stereo(rot: EulerRotation, p) -> StereoPoint:
    return stereo_from_vector(rot.matrix() @ vector_from_stereo(p))


def random_rotation(rng: np.random.Generator) -> EulerRotation:
    """Haar-random rotation drawn from ``rng``."""
    alpha, gamma = rng.uniform(0, 2 * np.pi, size=2)
    beta = math.acos(rng.uniform(-1.0, 1.0))
    return EulerRotation(float(alpha), beta, float(gamma))


def random_stereo(rng: np.random.Generator) -> StereoPoint:
    v = rng.normal(size=3)
    return stereo_from_vector(v)

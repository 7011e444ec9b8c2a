"""
Upper half-plane geometry: points, unit tangents, PSL2(R) isometries,
distances, the geodesic flow and frames adapted to a geodesic.

Unit tangents are identified with isometries through the NAK product

    g = N(x) A(sqrt(y)) K(theta / 2)

so that g maps the upward vertical vector at i to the tangent (x + iy, theta).
theta is measured counterclockwise from the upward vertical; the K-factor
carries the half-angle because K(phi) rotates tangent vectors at i by 2 phi.
"""

import logging
import math
from dataclasses import dataclass

from app.errors import DomainError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, slots=True)
class PointH:
    """A point x + iy of the upper half-plane."""

    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0.0:
            raise DomainError(f"Point must lie in the upper half-plane, got y={self.y}")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True, slots=True)
class Tangent:
    """A unit tangent vector: base point plus angle from the upward vertical."""

    base: PointH
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", self.angle % TWO_PI)


@dataclass(frozen=True, slots=True)
class GeodesicLine:
    """An oriented geodesic, flowing from endpoint_minus to endpoint_plus.

    Endpoints are real numbers or math.inf (the point at infinity).
    """

    endpoint_minus: float
    endpoint_plus: float

    def __post_init__(self):
        if self.endpoint_minus == self.endpoint_plus:
            raise DomainError(
                f"Geodesic endpoints must be distinct, got {self.endpoint_minus}"
            )

    def reversed(self) -> "GeodesicLine":
        return GeodesicLine(self.endpoint_plus, self.endpoint_minus)


@dataclass(frozen=True, slots=True)
class Isometry:
    """A PSL2(R) element stored as a determinant-one real matrix.

    Use Isometry.of(...) to build one from arbitrary entries: it rescales to
    determinant 1 and picks the sign whose first nonzero entry is positive.
    """

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def of(cls, a: float, b: float, c: float, d: float) -> "Isometry":
        det = a * d - b * c
        if not det > 0.0:
            raise DomainError(f"Isometry needs a positive determinant, got {det}")
        scale = 1.0 / math.sqrt(det)
        a, b, c, d = a * scale, b * scale, c * scale, d * scale
        first = next((v for v in (a, b, c, d) if v != 0.0), 1.0)
        if first < 0.0:
            a, b, c, d = -a, -b, -c, -d
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def geodesic_step(cls, s: float) -> "Isometry":
        """diag(e^{s/2}, e^{-s/2}), the time-s geodesic flow at the identity."""
        h = math.exp(0.5 * s)
        return cls(h, 0.0, 0.0, 1.0 / h)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry.of(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Isometry":
        return Isometry.of(self.d, -self.b, -self.c, self.a)

    @property
    def trace(self) -> float:
        return abs(self.a + self.d)

    def apply(self, z: PointH) -> PointH:
        return mobius_apply(self, z)

    def apply_boundary(self, x: float) -> float:
        """Action on the boundary R ∪ {inf}."""
        if math.isinf(x):
            return math.inf if self.c == 0.0 else self.a / self.c
        den = self.c * x + self.d
        if den == 0.0:
            return math.inf
        return (self.a * x + self.b) / den

    def close_to(self, other: "Isometry", tol: float = 1e-9) -> bool:
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        same = all(abs(p - q) <= tol for p, q in zip(mine, theirs))
        flipped = all(abs(p + q) <= tol for p, q in zip(mine, theirs))
        return same or flipped


def mobius_apply(g: Isometry, z: PointH) -> PointH:
    """(az + b) / (cz + d), written out in real coordinates."""
    x, y = z.x, z.y
    cx_d = g.c * x + g.d
    cy = g.c * y
    den = cx_d * cx_d + cy * cy
    re = ((g.a * x + g.b) * cx_d + g.a * g.c * y * y) / den
    im = y * (g.a * g.d - g.b * g.c) / den
    return PointH(re, im)


def u_invariant(z: PointH, w: PointH) -> float:
    dx = z.x - w.x
    dy = z.y - w.y
    return (dx * dx + dy * dy) / (4.0 * z.y * w.y)


def dist(z: PointH, w: PointH) -> float:
    """Hyperbolic distance, via rho = 2 asinh(sqrt(u))."""
    return 2.0 * math.asinh(math.sqrt(u_invariant(z, w)))


def tangent_to_isometry(t: Tangent) -> Isometry:
    root = math.sqrt(t.base.y)
    half = 0.5 * t.angle
    c, s = math.cos(half), math.sin(half)
    x = t.base.x
    return Isometry.of(
        root * c - x * s / root,
        root * s + x * c / root,
        -s / root,
        c / root,
    )


def isometry_to_tangent(g: Isometry) -> Tangent:
    base = mobius_apply(g, PointH(0.0, 1.0))
    # (c, d) of N A K(phi) is (-sin phi, cos phi) / sqrt(y)
    phi = math.atan2(-g.c, g.d)
    return Tangent(base, 2.0 * phi)


def act(g: Isometry, t: Tangent) -> Tangent:
    """Push a tangent vector forward by an isometry."""
    return isometry_to_tangent(g @ tangent_to_isometry(t))


def geodesic_flow(t: Tangent, s: float) -> Tangent:
    if s == 0.0:
        return t
    return isometry_to_tangent(tangent_to_isometry(t) @ Isometry.geodesic_step(s))


def geodesic_through(t: Tangent) -> GeodesicLine:
    """The oriented geodesic that t flows along."""
    g = tangent_to_isometry(t)
    return GeodesicLine(g.apply_boundary(0.0), g.apply_boundary(math.inf))


def axis_frame(line: GeodesicLine) -> Isometry:
    """An isometry sending endpoint_minus to 0 and endpoint_plus to infinity.

    Arc length along the line then becomes s -> i e^s on the vertical axis.
    """
    lo, hi = line.endpoint_minus, line.endpoint_plus
    if math.isinf(lo) and math.isinf(hi):
        raise DomainError("Geodesic endpoints must be distinct, got both at infinity")
    if math.isinf(hi):
        return Isometry.of(1.0, -lo, 0.0, 1.0)
    if math.isinf(lo):
        return Isometry.of(0.0, -1.0, 1.0, -hi)
    k = 1.0 if lo > hi else -1.0
    return Isometry.of(k, -k * lo, 1.0, -hi)


def axis_tangent(line: GeodesicLine) -> Tangent:
    """The tangent at the frame origin of line, pointing toward endpoint_plus."""
    return isometry_to_tangent(axis_frame(line).inverse())


def foot_and_offset(z: PointH) -> tuple[float, float]:
    """Position of z relative to the vertical axis.

    Returns (s, d): the nearest axis point is i e^s, at distance d from z.
    """
    s = 0.5 * math.log(z.x * z.x + z.y * z.y)
    d = math.asinh(abs(z.x) / z.y)
    return s, d

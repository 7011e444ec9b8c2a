"""
The modular surface PSL2(Z)\\H: reduction to the fundamental domain,
enumeration of lattice translates, the automorphic annulus kernel and the
lattice-point lemmas.
"""

import logging
import math
from dataclasses import dataclass

from app.errors import DomainError, EnumerationCapError, ReductionError
from app.geometry import (
    Isometry,
    PointH,
    Tangent,
    act,
    dist,
    geodesic_flow,
    mobius_apply,
    u_invariant,
)
from app.models import AnnulusSpec

logger = logging.getLogger(__name__)

DOMAIN_TOL = 1e-9
MAX_REDUCTION_STEPS = 10_000
DEFAULT_HIT_CAP = 1_000_000


@dataclass(frozen=True, slots=True)
class GammaElement:
    """An element of PSL2(Z), sign-canonical (first nonzero entry positive)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"Not in SL2(Z): {(self.a, self.b, self.c, self.d)}")
        first = next(v for v in (self.a, self.b, self.c, self.d) if v != 0)
        if first < 0:
            for name in ("a", "b", "c", "d"):
                object.__setattr__(self, name, -getattr(self, name))

    @classmethod
    def identity(cls) -> "GammaElement":
        return cls(1, 0, 0, 1)

    @classmethod
    def S(cls) -> "GammaElement":
        return cls(0, -1, 1, 0)

    @classmethod
    def T(cls, k: int = 1) -> "GammaElement":
        return cls(1, k, 0, 1)

    def __matmul__(self, other: "GammaElement") -> "GammaElement":
        return GammaElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "GammaElement":
        return GammaElement(self.d, -self.b, -self.c, self.a)

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def to_isometry(self) -> Isometry:
        return Isometry(float(self.a), float(self.b), float(self.c), float(self.d))

    def apply(self, z: PointH) -> PointH:
        return mobius_apply(self.to_isometry(), z)


@dataclass(frozen=True, slots=True)
class ReducedPoint:
    point: PointH
    reducer: GammaElement


@dataclass(frozen=True, slots=True)
class TranslateHit:
    gamma: GammaElement
    image: PointH
    distance: float


def reduce_point(z: PointH, max_steps: int = MAX_REDUCTION_STEPS) -> ReducedPoint:
    """Move z into the closed fundamental domain F.

    Alternates x -> x - round(x) with z -> -1/z while |z| < 1.
    """
    x, y = z.x, z.y
    a, b, c, d = 1, 0, 0, 1
    for _ in range(max_steps):
        n = round(x)
        if n:
            x -= n
            # T^{-n} on the left
            a, b = a - n * c, b - n * d
        r2 = x * x + y * y
        if r2 >= 1.0 - DOMAIN_TOL:
            return ReducedPoint(PointH(x, y), GammaElement(a, b, c, d))
        x, y = -x / r2, y / r2
        # S on the left
        a, b, c, d = -c, -d, a, b
    raise ReductionError(
        f"Reduction of ({z.x}, {z.y}) did not terminate in {max_steps} steps"
    )


def reduce_tangent(t: Tangent) -> tuple[Tangent, GammaElement]:
    """Move the base of t into F, carrying the direction along."""
    reduced = reduce_point(t.base)
    if reduced.reducer.is_identity():
        return t, reduced.reducer
    moved = act(reduced.reducer.to_isometry(), t)
    return Tangent(reduced.point, moved.angle), reduced.reducer


def in_F(z: PointH, tol: float = DOMAIN_TOL) -> bool:
    return abs(z.x) <= 0.5 + tol and z.x * z.x + z.y * z.y >= 1.0 - tol


def in_F_A(z: PointH, A: float) -> bool:
    if A < 1.0:
        raise DomainError(f"Truncation height must be at least 1, got A={A}")
    return in_F(z) and z.y <= A


def flow_on_surface(t: Tangent, s: float, step: float = 0.5) -> Tangent:
    """Geodesic flow on the surface, re-reducing after every step."""
    current, _ = reduce_tangent(t)
    n_steps = max(1, math.ceil(abs(s) / step))
    delta = s / n_steps
    for _ in range(n_steps):
        current, _ = reduce_tangent(geodesic_flow(current, delta))
    return current


def _ext_gcd(p: int, q: int) -> tuple[int, int, int]:
    """Return (g, x, y) with p x + q y = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while q:
        k, p, q = p // q, q, p % q
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return p, x0, y0


def _scan(z: PointH, w: PointH, rad: float, hit_cap: int):
    """Yield (a, b, c, d, image, u) for gamma with dist(z, gamma w) <= rad.

    w must already lie in F. Each projective element is produced once, with
    c > 0, or c = 0 and d = 1.
    """
    u_max = math.sinh(0.5 * rad) ** 2
    u_limit = u_max * (1.0 + 1e-12) + 1e-15
    q_lo = w.y * math.exp(-rad) / z.y
    q_hi = w.y * math.exp(rad) / z.y
    half_width = 2.0 * math.sinh(0.5 * rad)
    found = 0

    c_max = int(math.floor(math.sqrt(q_hi) / w.y + 1e-12))
    for c in range(0, c_max + 1):
        if c == 0:
            d_range = (1,)
        else:
            spread_sq = q_hi - (c * w.y) ** 2
            if spread_sq < 0.0:
                continue
            spread = math.sqrt(spread_sq)
            centre = -c * w.x
            d_range = range(math.ceil(centre - spread - 1e-12), math.floor(centre + spread + 1e-12) + 1)
        for d in d_range:
            if c == 0:
                a0, b0 = 1, 0
            else:
                q = (c * w.x + d) ** 2 + (c * w.y) ** 2
                if q < q_lo * (1.0 - 1e-12) or q > q_hi * (1.0 + 1e-12):
                    continue
                g, x, y = _ext_gcd(d, c)
                if g != 1:
                    continue
                # a d - b c = 1 from d x + c y = 1
                a0, b0 = x, -y
            base = mobius_apply(Isometry(float(a0), float(b0), float(c), float(d)), w)
            reach = half_width * math.sqrt(z.y * base.y) + 1e-12
            k_lo = math.ceil(z.x - base.x - reach)
            k_hi = math.floor(z.x - base.x + reach)
            for k in range(k_lo, k_hi + 1):
                image = PointH(base.x + k, base.y)
                u = u_invariant(z, image)
                if u > u_limit:
                    continue
                found += 1
                if found > hit_cap:
                    raise EnumerationCapError(hit_cap, rad)
                yield a0 + k * c, b0 + k * d, c, d, image, u


def translate_images(z: PointH, w: PointH, rad: float, hit_cap: int = DEFAULT_HIT_CAP) -> list[PointH]:
    """Images gamma w within distance rad of z, for w already in F."""
    return [hit[4] for hit in _scan(z, w, rad, hit_cap)]


def enumerate_translates(
    z: PointH, w: PointH, rad: float, hit_cap: int = DEFAULT_HIT_CAP
) -> list[TranslateHit]:
    """All gamma in PSL2(Z) with dist(z, gamma w) <= rad, each listed once.

    Candidates are coprime rows (c, d) with |cw + d|^2 inside the window
    forced by Im(gamma w) = Im(w) / |cw + d|^2, followed by the T^k shifts
    that can land within rad horizontally.
    """
    if not rad > 0.0:
        raise DomainError(f"Enumeration radius must be positive, got {rad}")
    reduced = reduce_point(w)
    delta = reduced.reducer
    hits = []
    for a, b, c, d, image, u in _scan(z, reduced.point, rad, hit_cap):
        gamma = GammaElement(a, b, c, d) @ delta
        hits.append(TranslateHit(gamma, image, 2.0 * math.asinh(math.sqrt(u))))
    hits.sort(key=lambda h: (h.distance, h.gamma.a, h.gamma.b, h.gamma.c, h.gamma.d))
    return hits


def kernel_value(z: PointH, w: PointH, ann: AnnulusSpec, hit_cap: int = DEFAULT_HIT_CAP) -> int:
    """The automorphic annulus kernel: translates of w at distance in [r, R]."""
    hits = enumerate_translates(z, w, ann.R, hit_cap)
    return sum(1 for hit in hits if ann.r <= hit.distance <= ann.R)


def count_lattice(z: PointH, w: PointH, delta: float, hit_cap: int = DEFAULT_HIT_CAP) -> int:
    """|{gamma : u(z, gamma w) <= delta}|."""
    if delta < 0.0:
        raise DomainError(f"delta must be non-negative, got {delta}")
    rad = max(2.0 * math.asinh(math.sqrt(delta)), 1e-9)
    hits = enumerate_translates(z, w, rad, hit_cap)
    return sum(1 for hit in hits if u_invariant(z, hit.image) <= delta + 1e-12)


def min_spacing(w: PointH) -> float:
    """min over gamma != 1 of dist(w, gamma w); T bounds it by dist(w, w + 1)."""
    rad = dist(w, PointH(w.x + 1.0, w.y)) + 1e-9
    hits = enumerate_translates(w, w, rad)
    return min(hit.distance for hit in hits if not hit.gamma.is_identity())

"""
Angular average of ray-annulus intersections and the main-term integral.
"""

import cmath
import logging
import math

from scipy import integrate

from app.geometry import Isometry, PointH, foot_and_offset, mobius_apply
from app.intersections.chords import annulus_chord, chord_half_length
from app.models import AnnulusSpec
from app.special import G_value

logger = logging.getLogger(__name__)

QUAD_EPSREL = 1e-10
QUAD_LIMIT = 200


def _ray_length(p: PointH, theta: float, ann: AnnulusSpec) -> float:
    """Time the ray from i at angle theta spends in the annulus around p."""
    half = 0.5 * theta
    c, s = math.cos(half), math.sin(half)
    q = mobius_apply(Isometry(c, -s, s, c), p)
    foot, d = foot_and_offset(q)
    return sum(window.clipped(0.0, math.inf) for window in annulus_chord(d, foot, ann))


def _breakpoints(p: PointH, D: float, ann: AnnulusSpec) -> list[float]:
    """Angles in (0, 2 pi) where the ray length is not smooth."""
    if D < 1e-12:
        return []
    zeta = (p.z - 1j) / (p.z + 1j)
    theta_w = cmath.phase(zeta)
    offsets = [0.5 * math.pi, -0.5 * math.pi]
    for rad in (ann.r, ann.R):
        if 0.0 < rad < D:
            alpha = math.asin(math.sinh(rad) / math.sinh(D))
            offsets += [alpha, -alpha, math.pi + alpha, math.pi - alpha]
    points = {(theta_w + offset) % (2.0 * math.pi) for offset in offsets}
    return sorted(pt for pt in points if 1e-12 < pt < 2.0 * math.pi - 1e-12)


def theta_average(z: PointH, w: PointH, ann: AnnulusSpec) -> float:
    """int_0^{2 pi} int_0^inf 1[r <= d(g_t(z, theta), w) <= R] dt d theta.

    Rays are one-sided; for each direction the time inside the annulus comes
    from the chord geometry, and the angular integral is split at tangency
    angles.
    """
    p = PointH((w.x - z.x) / z.y, w.y / z.y)
    D = 2.0 * math.asinh(math.sqrt(((p.x * p.x) + (p.y - 1.0) ** 2) / (4.0 * p.y)))
    edges = [0.0, *_breakpoints(p, D, ann), 2.0 * math.pi]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        value, _ = integrate.quad(
            lambda theta: _ray_length(p, theta, ann),
            lo,
            hi,
            epsabs=0.0,
            epsrel=QUAD_EPSREL,
            limit=QUAD_LIMIT,
        )
        total += value
    return total


def main_term_integral(ann: AnnulusSpec) -> float:
    """8 int_0^{sinh R} (sqrt(S^2 - x^2) - 1[x <= s] sqrt(s^2 - x^2))^2 dx,
    with S = sinh R and s = sinh r.

    On [s, S] the integrand is the polynomial S^2 - x^2. On [0, s] the
    substitution x = s sin(phi) removes the square-root endpoint.
    """
    S = math.sinh(ann.R)
    s = math.sinh(ann.r)
    outer = 2.0 * S ** 3 / 3.0 - S * S * s + s ** 3 / 3.0
    if s == 0.0:
        return 8.0 * outer

    def inner_integrand(phi: float) -> float:
        x = s * math.sin(phi)
        gap = math.sqrt(S * S - x * x) - s * math.cos(phi)
        return gap * gap * s * math.cos(phi)

    inner, _ = integrate.quad(inner_integrand, 0.0, 0.5 * math.pi, epsabs=0.0, epsrel=1e-12)
    return 8.0 * (outer + inner)


def main_term_arccosh_integral(ann: AnnulusSpec) -> float:
    """8 int_0^R (l_R(D) - 1[D <= r] l_r(D))^2 cosh(D) dD with
    l_rad(D) = arccosh(cosh rad / cosh D)."""

    def integrand(D: float) -> float:
        chord = chord_half_length(D, ann.R) - chord_half_length(D, ann.r)
        return chord * chord * math.cosh(D)

    points = [ann.r] if ann.r > 0.0 else None
    value, _ = integrate.quad(integrand, 0.0, ann.R, points=points, epsabs=0.0, epsrel=1e-11)
    return 8.0 * value


def main_term_closed_form(ann: AnnulusSpec) -> float:
    S = math.sinh(ann.R)
    return 16.0 * S ** 3 / 3.0 * G_value(math.sinh(ann.r) / S)


THETA_CLOSE_CONSTANT = 30.0
THETA_MIDDLE_CONSTANT = 20.0
THETA_FAR_CONSTANT = 25.0


def theta_regime_bound(D: float, ann: AnnulusSpec) -> float:
    """Upper bound on theta_average for centres at distance D."""
    gap = ann.R - ann.r
    if D < 2.0 * ann.R:
        return THETA_CLOSE_CONSTANT * gap * math.log(2.0 * ann.R / gap)
    if D < 1.0:
        return THETA_MIDDLE_CONSTANT * ann.R * gap / D
    return THETA_FAR_CONSTANT * ann.R * gap * math.exp(-D)

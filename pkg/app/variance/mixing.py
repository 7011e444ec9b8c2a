"""
Correlation of centred ball indicators under the geodesic flow.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from app.errors import DomainError
from app.geometry import PointH
from app.models import BallSpec, Estimate
from app.modular import enumerate_translates, flow_on_surface, min_spacing, reduce_point, translate_images
from app.variance.runner import run_samples
from app.variance.sampling import MU_F, sample_tangent

logger = logging.getLogger(__name__)

MIXING_CONSTANT = 2.0


def ball_mass(ball: BallSpec) -> float:
    """Normalised area of an embedded ball on X."""
    return 4.0 * math.pi * math.sinh(0.5 * ball.radius) ** 2 / MU_F


def decay_envelope(t: float, norm_phi: float, norm_psi: float) -> float:
    return (abs(t) + 1.0) * math.exp(-0.5 * abs(t)) * norm_phi * norm_psi


def _embedded_centre(ball: BallSpec) -> PointH:
    centre = reduce_point(PointH(ball.x, ball.y)).point
    spacing = min_spacing(centre)
    if not ball.radius < 0.5 * spacing:
        raise DomainError(
            f"Ball radius {ball.radius} must be below half the lattice spacing {spacing:.6g} at its centre"
        )
    return centre


def _exact_at_zero(phi: BallSpec, psi: BallSpec, p: float, q: float) -> float | None:
    """Correlation at t = 0 when it is elementary: equal or disjoint balls."""
    if phi == psi:
        return p * (1.0 - p)
    hits = enumerate_translates(PointH(phi.x, phi.y), PointH(psi.x, psi.y), phi.radius + psi.radius)
    if not hits:
        return -p * q
    return None


@dataclass(frozen=True)
class MixingSampler:
    centre_phi: PointH
    radius_phi: float
    centre_psi: PointH
    radius_psi: float
    p: float
    q: float
    t: float
    step: float

    def __call__(self, rng: np.random.Generator) -> float:
        g = sample_tangent(rng)
        inside_phi = bool(translate_images(g.base, self.centre_phi, self.radius_phi))
        flowed = flow_on_surface(g, self.t, self.step) if self.t != 0.0 else g
        inside_psi = bool(translate_images(flowed.base, self.centre_psi, self.radius_psi))
        return (float(inside_phi) - self.p) * (float(inside_psi) - self.q)


def mixing_correlation(
    phi: BallSpec,
    psi: BallSpec,
    t: float,
    n: int,
    seed: int,
    *,
    workers: int = 1,
    step: float = 0.5,
    chunk_size: int = 256,
) -> Estimate:
    """Monte Carlo estimate of the Liouville integral of phi(g) psi(g_t).

    The prediction is the exact t = 0 value when it is elementary and 0
    otherwise; the decay envelope is reported in the extras.
    """
    centre_phi = _embedded_centre(phi)
    centre_psi = _embedded_centre(psi)
    p, q = ball_mass(phi), ball_mass(psi)
    norm_phi, norm_psi = math.sqrt(p * (1.0 - p)), math.sqrt(q * (1.0 - q))
    envelope = decay_envelope(t, norm_phi, norm_psi)
    exact = _exact_at_zero(phi, psi, p, q) if t == 0.0 else None
    sampler = MixingSampler(centre_phi, phi.radius, centre_psi, psi.radius, p, q, t, step)
    logger.info(f"mixing_correlation: t={t}, n={n}, envelope={envelope:.4g}")
    values = run_samples(sampler, n, seed, workers, chunk_size)
    extras = {"envelope": envelope, "norm_phi": norm_phi, "norm_psi": norm_psi, "p": p, "q": q}
    return Estimate.from_samples(values, seed, exact if exact is not None else 0.0, extras)


def within_decay_envelope(estimate: Estimate, sigmas: float = 4.0) -> bool:
    """|mean - prediction| <= MIXING_CONSTANT * envelope + sigmas * stderr."""
    allowed = MIXING_CONSTANT * estimate.extras["envelope"] + sigmas * estimate.stderr
    return abs(estimate.mean - estimate.prediction) <= allowed

"""
Seeded sampling of points and unit tangents on the modular surface.

Sample i of a run with seed s always draws from its own stream,
SeedSequence(s, spawn_key=(i,)), so results do not depend on how samples
are split between workers.
"""

import math

import numpy as np

from app.errors import DomainError
from app.geometry import PointH, Tangent

MU_F = math.pi / 3.0
_INV_Y_MAX = 2.0 / math.sqrt(3.0)


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def mu_F_A(A: float) -> float:
    """Hyperbolic area of F truncated at height A."""
    return MU_F - (0.0 if math.isinf(A) else 1.0 / A)


def sample_point_F(A: float, rng: np.random.Generator) -> PointH:
    """A point of F_A drawn from the normalised hyperbolic area.

    x is uniform on [-1/2, 1/2] and 1/y uniform on [1/A, 2/sqrt(3)], which is
    the density dy / y^2; points below the unit circle are rejected.
    """
    if not A >= 1.0:
        raise DomainError(f"Truncation height must be at least 1, got A={A}")
    inv_lo = 0.0 if math.isinf(A) else 1.0 / A
    while True:
        x = rng.uniform(-0.5, 0.5)
        inv_y = rng.uniform(inv_lo, _INV_Y_MAX)
        if inv_y == 0.0:
            continue
        y = 1.0 / inv_y
        if x * x + y * y >= 1.0:
            return PointH(x, y)


def sample_tangent(rng: np.random.Generator, A: float = math.inf) -> Tangent:
    """A Liouville-distributed unit tangent with base point in F_A."""
    base = sample_point_F(A, rng)
    return Tangent(base, rng.uniform(0.0, 2.0 * math.pi))

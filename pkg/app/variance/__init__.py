"""
Seeded Monte Carlo estimators.
"""

from .estimators import (
    agrees_with_prediction,
    closed_prediction,
    expectation_check,
    random_prediction,
    spectral_main_term,
    thin_annulus_prediction,
    truncation_scan,
    var_closed,
    var_random,
)
from .mixing import ball_mass, decay_envelope, mixing_correlation, within_decay_envelope
from .runner import run_samples
from .sampling import MU_F, mu_F_A, sample_point_F, sample_rng, sample_tangent

__all__ = [
    "MU_F",
    "agrees_with_prediction",
    "ball_mass",
    "closed_prediction",
    "decay_envelope",
    "expectation_check",
    "mixing_correlation",
    "mu_F_A",
    "random_prediction",
    "run_samples",
    "sample_point_F",
    "sample_rng",
    "sample_tangent",
    "spectral_main_term",
    "thin_annulus_prediction",
    "truncation_scan",
    "var_closed",
    "var_random",
    "within_decay_envelope",
]

"""
Special functions and integral transforms.
"""

from .functions import (
    G_asymptotic,
    G_function,
    G_prime,
    G_value,
    bessel_J,
    elliptic_E,
    elliptic_K,
    weight_H,
)
from .transforms import (
    bessel_main_closed_form,
    bessel_main_integral,
    composite_gauss_legendre,
    legendre_conical,
    shc_asymptotic,
    shc_bound,
    shc_error_envelope,
    shc_legendre,
    shc_numeric,
)

__all__ = [
    "G_asymptotic",
    "G_function",
    "G_prime",
    "G_value",
    "bessel_J",
    "bessel_main_closed_form",
    "bessel_main_integral",
    "composite_gauss_legendre",
    "elliptic_E",
    "elliptic_K",
    "legendre_conical",
    "shc_asymptotic",
    "shc_bound",
    "shc_error_envelope",
    "shc_legendre",
    "shc_numeric",
    "weight_H",
]

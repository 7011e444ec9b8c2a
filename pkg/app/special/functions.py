"""
Complete elliptic integrals, the annulus shape function G, Bessel J0/J1 and
the gamma-factor weight H(t).

K(k) and E(k) take the modulus k (not the parameter m = k^2).
"""

import logging
import math

import numpy as np
from scipy import special

from app.errors import DomainError
from app.models import GValue

logger = logging.getLogger(__name__)

_AGM_MAX_STEPS = 64


def _agm(k: float) -> tuple[float, float]:
    """Return (K(k), sum 2^{n-1} c_n^2) from the arithmetic-geometric mean.

    E = K (1 - sum) and K - E = K * sum, without subtracting K and E.
    """
    a = 1.0
    b = math.sqrt((1.0 - k) * (1.0 + k))
    weight = 0.5
    total = weight * k * k
    for _ in range(_AGM_MAX_STEPS):
        if abs(a - b) <= 1e-15 * a:
            break
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        weight *= 2.0
        total += weight * c * c
    return math.pi / (2.0 * a), total


def _check_modulus(k: float, closed: bool) -> None:
    upper_ok = k <= 1.0 if closed else k < 1.0
    if not (k >= 0.0 and upper_ok):
        bound = "[0, 1]" if closed else "[0, 1)"
        raise DomainError(f"Elliptic modulus must lie in {bound}, got {k}")


def elliptic_K(k: float) -> float:
    _check_modulus(k, closed=False)
    return _agm(k)[0]


def elliptic_E(k: float) -> float:
    _check_modulus(k, closed=True)
    if k == 1.0:
        return 1.0
    K, total = _agm(k)
    return K * (1.0 - total)


def G_value(w: float) -> float:
    """1 + w^3 + (1 - w^2) K(w) - (1 + w^2) E(w).

    Rearranged as (1 - w)(1 + w - w^2) - 2 w^2 (E - 1) + (1 - w^2)(K - E)
    so that nothing large is subtracted as w -> 1.
    """
    if not 0.0 <= w < 1.0:
        raise DomainError(f"G is defined on [0, 1), got w={w}")
    K, total = _agm(w)
    k_minus_e = K * total
    e_minus_one = K * (1.0 - total) - 1.0
    return (1.0 - w) * (1.0 + w - w * w) - 2.0 * w * w * e_minus_one + (1.0 - w * w) * k_minus_e


def G_function(w: float) -> GValue:
    return GValue(w=w, value=G_value(w))


def G_prime(w: float) -> float:
    """G'(w) = 3 w (w - E(w)), never positive on [0, 1)."""
    if not 0.0 <= w < 1.0:
        raise DomainError(f"G is defined on [0, 1), got w={w}")
    return 3.0 * w * (w - elliptic_E(w))


def G_asymptotic(w: float) -> float:
    """Leading behaviour (3/4)(1 - w)^2 log(2 / (1 - w)) as w -> 1."""
    gap = 1.0 - w
    return 0.75 * gap * gap * math.log(2.0 / gap)


def bessel_J(order: int, x):
    if order == 0:
        result = special.j0(x)
    elif order == 1:
        result = special.j1(x)
    else:
        raise DomainError(f"Only J0 and J1 are available, got order {order}")
    return float(result) if np.ndim(result) == 0 else result


def weight_H(t: float) -> float:
    """H(t) = |Gamma(1/4 + it/2)|^4 / |Gamma(1/2 + it)|^2 via log-gamma."""
    quarter = special.loggamma(0.25 + 0.5j * t).real
    half = special.loggamma(0.5 + 1j * t).real
    return math.exp(4.0 * quarter - 2.0 * half)

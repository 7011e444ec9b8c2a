"""
Spherical transform of the annulus indicator and its Bessel counterparts.

The transform h(t) of 1_{[r, R]}(d) is computed two ways:

* shc_numeric, the production route, integrates the Abel transform
  4 sqrt(2) [F(R) - F(r)] with F(rho) = int_0^rho cos(t s) sqrt(cosh rho - cosh s) ds;
* shc_legendre integrates the conical function P_{-1/2+it}(cosh rho)
  against the area element sinh(rho) and is kept as a cross-check.

Both substitute s = rho (1 - v^2), which turns the square-root endpoint
behaviour into a smooth integrand on [0, 1] for composite Gauss-Legendre.
"""

import logging
import math

import numpy as np
from scipy import integrate

from app.errors import DomainError, QuadratureError
from app.models import AnnulusSpec
from app.special.functions import G_value, bessel_J

logger = logging.getLogger(__name__)

GL_ORDER = 20
MAX_DOUBLINGS = 12
BESSEL_CUTOFF = 2000.0
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)


def composite_gauss_legendre(lo: float, hi: float, panels: int, order: int = GL_ORDER):
    """Nodes and weights of a composite Gauss-Legendre rule on [lo, hi]."""
    if order == GL_ORDER:
        nodes, weights = _GL_NODES, _GL_WEIGHTS
    else:
        nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return x, w


def _sinh_gap(rho, v):
    """cosh(rho) - cosh(rho (1 - v^2)) as a product of sinh terms."""
    return 2.0 * np.sinh(rho * (1.0 - 0.5 * v * v)) * np.sinh(0.5 * rho * v * v)


def legendre_conical(t: float, rho, panels: int | None = None):
    """P_{-1/2+it}(cosh rho) for 0 <= rho <= 10 (scalar or array rho).

    Mehler-Dirichlet form (sqrt 2 / pi) int_0^rho cos(t s) / sqrt(cosh rho - cosh s) ds.
    """
    rho_arr = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(rho_arr < 0.0) or np.any(rho_arr > 10.0):
        raise DomainError("Conical function is evaluated for 0 <= rho <= 10 only")
    if panels is None:
        panels = 4 + math.ceil(float(rho_arr.max()) * abs(t))
    v, wv = composite_gauss_legendre(0.0, 1.0, panels)
    R = rho_arr[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        integrand = np.cos(t * R * (1.0 - v * v)) * 2.0 * R * v / np.sqrt(_sinh_gap(R, v))
        values = math.sqrt(2.0) / math.pi * (integrand @ wv)
    values = np.where(rho_arr == 0.0, 1.0, values)
    return float(values[0]) if np.ndim(rho) == 0 else values


def _abel_F(rho: float, t: float, panels: int) -> float:
    if rho == 0.0:
        return 0.0
    v, wv = composite_gauss_legendre(0.0, 1.0, panels)
    integrand = np.cos(t * rho * (1.0 - v * v)) * np.sqrt(_sinh_gap(rho, v)) * 2.0 * rho * v
    return float(integrand @ wv)


def shc_numeric(ann: AnnulusSpec, t: float, rtol: float = 1e-7) -> float:
    """h(t) by the Abel route, panel count doubled until two passes agree."""
    scale = 4.0 * math.sqrt(2.0) * abs(_abel_F(ann.R, 0.0, 2))
    panels = 2 + math.ceil(0.5 * ann.R * abs(t))
    previous = None
    for _ in range(MAX_DOUBLINGS):
        value = 4.0 * math.sqrt(2.0) * (_abel_F(ann.R, t, panels) - _abel_F(ann.r, t, panels))
        if previous is not None and abs(value - previous) <= rtol * abs(value) + 1e-14 * scale:
            return value
        previous = value
        panels *= 2
    raise QuadratureError(
        f"Spherical transform did not converge for t={t}",
        {"t": t, "r": ann.r, "R": ann.R, "panels": panels, "last": previous},
    )


def shc_legendre(ann: AnnulusSpec, t: float, panels: int | None = None) -> float:
    """2 pi int_r^R P_{-1/2+it}(cosh rho) sinh(rho) d rho."""
    if panels is None:
        panels = 2 + math.ceil(ann.R * abs(t))
    rho, w = composite_gauss_legendre(ann.r, ann.R, panels)
    inner_panels = 4 + math.ceil(ann.R * abs(t))
    P = legendre_conical(t, rho, panels=inner_panels)
    return float(2.0 * math.pi * np.sum(w * P * np.sinh(rho)))


def shc_asymptotic(ann: AnnulusSpec, t: float) -> float:
    """Euclidean model 2 pi (R J1(R t) - r J1(r t)) / t of a wide annulus."""
    if ann.r > 0.5 * ann.R:
        raise DomainError(
            f"Bessel approximation needs r <= R/2, got r={ann.r}, R={ann.R}"
        )
    if abs(t) * ann.R < 1e-8:
        return math.pi * (ann.R * ann.R - ann.r * ann.r)
    outer = ann.R * bessel_J(1, ann.R * t)
    inner = ann.r * bessel_J(1, ann.r * t) if ann.r > 0.0 else 0.0
    return 2.0 * math.pi * (outer - inner) / t


def _cosine_tail(a: float, cutoff: float) -> float:
    """int_cutoff^inf cos(a x) / x^3 dx."""
    if a == 0.0:
        return 0.5 / (cutoff * cutoff)
    value, _ = integrate.quad(lambda x: x ** -3, cutoff, np.inf, weight="cos", wvar=a)
    return value


def bessel_main_integral(ann: AnnulusSpec, cutoff: float = BESSEL_CUTOFF) -> float:
    """R^3 int_0^inf ((J1(x) - w J1(w x)) / x)^2 dx with w = r / R.

    Unit Gauss-Legendre panels up to the cutoff, plus the averaged
    large-x asymptotic for the remainder.
    """
    w = ann.ratio
    panels = math.ceil(cutoff)

    def body(order: int) -> float:
        x, wx = composite_gauss_legendre(0.0, cutoff, panels, order)
        f = (bessel_J(1, x) - w * bessel_J(1, w * x)) / x
        return float(np.sum(wx * f * f))

    fine = body(GL_ORDER)
    coarse = body(GL_ORDER - 4)
    if abs(fine - coarse) > 1e-10 * abs(fine):
        raise QuadratureError(
            "Bessel main-term integral did not converge",
            {"fine": fine, "coarse": coarse, "w": w},
        )
    tail = (1.0 + w) / (2.0 * cutoff * cutoff)
    if w > 0.0:
        tail -= 2.0 * math.sqrt(w) * _cosine_tail(1.0 - w, cutoff)
    tail /= math.pi
    return ann.R ** 3 * (fine + tail)


def bessel_main_closed_form(ann: AnnulusSpec) -> float:
    """Closed form 4 R^3 G(w) / (3 pi) of bessel_main_integral."""
    return 4.0 * ann.R ** 3 * G_value(ann.ratio) / (3.0 * math.pi)


SHC_ENVELOPE_CONSTANT = 10.0
SHC_BOUND_CONSTANT = 12.0


def shc_error_envelope(R: float, t: float) -> float:
    """Allowed |shc_numeric - shc_asymptotic|: C R^4 for |t| <= 1/R, else
    C R^{7/2} / sqrt|t|."""
    if abs(t) * R <= 1.0:
        return SHC_ENVELOPE_CONSTANT * R ** 4
    return SHC_ENVELOPE_CONSTANT * R ** 3.5 / math.sqrt(abs(t))


def shc_bound(R: float, t: float) -> float:
    """Size bound on h: C R^2 for |t| <= 1/R, else C sqrt(R) / |t|^{3/2}."""
    if abs(t) * R <= 1.0:
        return SHC_BOUND_CONSTANT * R * R
    return SHC_BOUND_CONSTANT * math.sqrt(R) / abs(t) ** 1.5

"""
Chords cut by an annulus on a geodesic.

Everything is computed in the frame where the geodesic is the imaginary
axis, parametrised by arc length as s -> i e^s. A centre at distance d from
the axis with foot point i e^{foot} meets the ball of radius rad in the
window foot +- l, where cosh(rad) = cosh(d) cosh(l).
"""

import math
from dataclasses import dataclass

from app.models import AnnulusSpec


@dataclass(frozen=True, slots=True)
class ChordWindow:
    s_lo: float
    s_hi: float

    @property
    def length(self) -> float:
        return self.s_hi - self.s_lo

    def clipped(self, lo: float, hi: float) -> float:
        """Length of the part of the window inside [lo, hi)."""
        return max(0.0, min(self.s_hi, hi) - max(self.s_lo, lo))


def chord_half_length(d: float, rad: float) -> float:
    """arccosh(cosh rad / cosh d) for d < rad, else 0.

    Written as 2 asinh(sqrt(sinh((rad - d)/2) sinh((rad + d)/2) / cosh d)),
    which keeps full relative accuracy near tangency.
    """
    d = abs(d)
    if d >= rad:
        return 0.0
    inner = math.sinh(0.5 * (rad - d)) * math.sinh(0.5 * (rad + d)) / math.cosh(d)
    return 2.0 * math.asinh(math.sqrt(inner))


def annulus_chord(d: float, foot_s: float, ann: AnnulusSpec) -> list[ChordWindow]:
    d = abs(d)
    if d > ann.R:
        return []
    outer = chord_half_length(d, ann.R)
    if ann.r > 0.0 and d < ann.r:
        inner = chord_half_length(d, ann.r)
        return [
            ChordWindow(foot_s - outer, foot_s - inner),
            ChordWindow(foot_s + inner, foot_s + outer),
        ]
    return [ChordWindow(foot_s - outer, foot_s + outer)]

"""
Fold closed geodesics into the fundamental domain as a list of arc pieces.
"""

import logging
import math
from dataclasses import dataclass

from app.errors import PieceCapError
from app.forms import FormCache, FormCycle, FormTriple, cycle_anchors
from app.geometry import (
    GeodesicLine,
    PointH,
    Tangent,
    geodesic_flow,
    geodesic_through,
    mobius_apply,
    tangent_to_isometry,
)
from app.modular import in_F, reduce_tangent

logger = logging.getLogger(__name__)

EXIT_NUDGE = 1e-9
BISECTION_STEPS = 60


@dataclass(frozen=True, slots=True)
class GeodesicPiece:
    start: PointH
    end: PointH
    line: GeodesicLine

    @property
    def is_vertical(self) -> bool:
        return math.isinf(self.line.endpoint_minus) or math.isinf(self.line.endpoint_plus)

    @property
    def centre(self) -> float:
        return 0.5 * (self.line.endpoint_minus + self.line.endpoint_plus)

    @property
    def radius(self) -> float:
        return 0.5 * abs(self.line.endpoint_plus - self.line.endpoint_minus)

    def max_height(self) -> float:
        if not self.is_vertical:
            lo, hi = sorted((self.start.x, self.end.x))
            if lo <= self.centre <= hi:
                return self.radius
        return max(self.start.y, self.end.y)


@dataclass(frozen=True, slots=True)
class FoldedClass:
    form: FormTriple
    pieces: tuple[GeodesicPiece, ...]

    def max_height(self) -> float:
        return max(piece.max_height() for piece in self.pieces)


def _exit_time(t: Tangent, lo: float, hi: float) -> float:
    """Bisect for the last time in [lo, hi) at which the orbit is still in F."""
    g = tangent_to_isometry(t)
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if in_F(mobius_apply(g, PointH(0.0, math.exp(mid)))):
            lo = mid
        else:
            hi = mid
    return lo


def fold_geodesic(start: Tangent, length: float, step: float = 0.05, max_pieces: int = 10_000) -> list[GeodesicPiece]:
    """Pieces of the orbit of `start` over [0, length], each inside F."""
    current, _ = reduce_tangent(start)
    travelled = 0.0
    pieces: list[GeodesicPiece] = []
    while travelled < length:
        if len(pieces) >= max_pieces:
            raise PieceCapError(f"Folding a geodesic of length {length:.6g} exceeded {max_pieces} pieces")
        g = tangent_to_isometry(current)
        remaining = length - travelled
        s = 0.0
        exit_at = remaining
        while s < remaining:
            s_next = min(s + step, remaining)
            if not in_F(mobius_apply(g, PointH(0.0, math.exp(s_next)))):
                exit_at = _exit_time(current, s, s_next)
                break
            s = s_next
        end = mobius_apply(g, PointH(0.0, math.exp(exit_at)))
        pieces.append(GeodesicPiece(current.base, end, geodesic_through(current)))
        travelled += exit_at + EXIT_NUDGE
        current, _ = reduce_tangent(geodesic_flow(current, exit_at + EXIT_NUDGE))
    return pieces


def fold_cycle(cycle: FormCycle, period: float, step: float = 0.05, max_pieces: int = 10_000) -> list[GeodesicPiece]:
    """Fold one period, restarting at every anchor of the cycle."""
    anchors, _ = cycle_anchors(cycle)
    ends = [anchor.position for anchor in anchors[1:]] + [period]
    pieces: list[GeodesicPiece] = []
    for anchor, end in zip(anchors, ends):
        try:
            pieces.extend(fold_geodesic(anchor.tangent, end - anchor.position, step, max_pieces - len(pieces)))
        except PieceCapError as exc:
            raise PieceCapError(f"Folding a geodesic of length {period:.6g} exceeded {max_pieces} pieces") from exc
    return pieces


def fold_classes(D: int, cache: FormCache, step: float = 0.05, max_pieces: int = 10_000) -> list[FoldedClass]:
    """Every closed geodesic of discriminant D, folded, under one shared piece budget."""
    period = cache.get(D).geodesic_length
    folded = []
    used = 0
    for cycle in cache.cycles(D):
        try:
            pieces = fold_cycle(cycle, period, step, max_pieces - used)
        except PieceCapError as exc:
            raise PieceCapError(f"Folding the geodesics of D={D} exceeded {max_pieces} pieces") from exc
        used += len(pieces)
        folded.append(FoldedClass(cycle.representative, tuple(pieces)))
    logger.debug(f"D={D}: {len(folded)} classes folded into {used} pieces")
    return folded

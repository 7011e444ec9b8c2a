"""
Intersection length of a geodesic segment on the modular surface with the
lattice of annuli around the translates of a centre w.

A long segment is cut into windows of length at most `step`. The tangent is
re-reduced to the fundamental domain at the start of every window, so each
window only needs the translates near a point of F. Closed geodesics are
instead cut from the anchors of their reduction cycle.
"""

import bisect
import logging
import math
from dataclasses import dataclass

from app.forms import CycleAnchor
from app.geometry import (
    Isometry,
    PointH,
    Tangent,
    foot_and_offset,
    geodesic_flow,
    isometry_to_tangent,
    mobius_apply,
    tangent_to_isometry,
)
from app.intersections.chords import annulus_chord
from app.models import AnnulusSpec
from app.modular import DEFAULT_HIT_CAP, reduce_point, reduce_tangent, translate_images

logger = logging.getLogger(__name__)

ENUMERATION_SLACK = 0.1


@dataclass(frozen=True, slots=True)
class SegmentFrame:
    """A geodesic segment, as the window [s_start, s_end] of the imaginary
    axis after applying `frame`."""

    frame: Isometry
    s_start: float
    s_end: float

    def __post_init__(self):
        if not self.s_start < self.s_end:
            raise ValueError(f"Segment window must be nonempty, got [{self.s_start}, {self.s_end}]")

    @property
    def length(self) -> float:
        return self.s_end - self.s_start

    def point_at(self, s: float) -> PointH:
        return mobius_apply(self.frame.inverse(), PointH(0.0, math.exp(s)))


def _window_length(seg: SegmentFrame, w_reduced: PointH, ann: AnnulusSpec, hit_cap: int) -> float:
    centre = seg.point_at(0.5 * (seg.s_start + seg.s_end))
    rad = 0.5 * seg.length + ann.R + ENUMERATION_SLACK
    total = 0.0
    for image in translate_images(centre, w_reduced, rad, hit_cap):
        foot, d = foot_and_offset(mobius_apply(seg.frame, image))
        for window in annulus_chord(d, foot, ann):
            total += window.clipped(seg.s_start, seg.s_end)
    return total


def segment_annulus_length(
    seg: SegmentFrame, w: PointH, ann: AnnulusSpec, hit_cap: int = DEFAULT_HIT_CAP
) -> float:
    """Sum over translates gamma w of the chord length inside the segment."""
    return _window_length(seg, reduce_point(w).point, ann, hit_cap)


def _windows(L: float, step: float) -> tuple[int, float]:
    if not L > 0.0:
        raise ValueError(f"Segment length must be positive, got L={L}")
    if not 0.0 < step <= 1.0:
        raise ValueError(f"Walker step must lie in (0, 1], got step={step}")
    n = max(1, math.ceil(L / step - 1e-12))
    return n, L / n


def trace_segment(g0: Tangent, L: float, step: float = 0.5) -> list[SegmentFrame]:
    """Cut the length-L orbit of g0 into ceil(L / step) equal windows."""
    n, delta = _windows(L, step)
    advance = Isometry.geodesic_step(delta)
    frames = []
    current = g0
    for _ in range(n):
        current, _ = reduce_tangent(current)
        g = tangent_to_isometry(current)
        frames.append(SegmentFrame(g.inverse(), 0.0, delta))
        current = isometry_to_tangent(g @ advance)
    return frames


def trace_closed_geodesic(anchors: list[CycleAnchor], period: float, step: float = 0.5) -> list[SegmentFrame]:
    """Windows over one period of a closed geodesic.

    Each window starts from the nearest anchor, so errors do not build up
    from one window to the next over a long period.
    """
    if not anchors:
        raise ValueError("A closed geodesic needs at least one anchor")
    n, delta = _windows(period, step)
    positions = [anchor.position for anchor in anchors] + [period]
    frames = []
    for k in range(n):
        s = k * delta
        j = bisect.bisect_right(positions, s) - 1
        if positions[j + 1] - s < s - positions[j]:
            j += 1
        start = anchors[j % len(anchors)].tangent
        current, _ = reduce_tangent(geodesic_flow(start, s - positions[j]))
        frames.append(SegmentFrame(tangent_to_isometry(current).inverse(), 0.0, delta))
    return frames


def path_annulus_length(
    frames: list[SegmentFrame], w: PointH, ann: AnnulusSpec, hit_cap: int = DEFAULT_HIT_CAP
) -> float:
    w_reduced = reduce_point(w).point
    return sum(_window_length(seg, w_reduced, ann, hit_cap) for seg in frames)


def walk_segment(
    g0: Tangent,
    L: float,
    w: PointH,
    ann: AnnulusSpec,
    step: float = 0.5,
    hit_cap: int = DEFAULT_HIT_CAP,
) -> float:
    """Length of {0 <= t <= L : r <= d(g_t, gamma w) <= R for some gamma}, with
    multiplicity over gamma."""
    return path_annulus_length(trace_segment(g0, L, step), w, ann, hit_cap)

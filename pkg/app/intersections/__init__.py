"""
Geodesic-annulus intersection geometry.
"""

from .averages import (
    main_term_arccosh_integral,
    main_term_closed_form,
    main_term_integral,
    theta_average,
    theta_regime_bound,
)
from .chords import ChordWindow, annulus_chord, chord_half_length
from .walker import (
    SegmentFrame,
    path_annulus_length,
    segment_annulus_length,
    trace_closed_geodesic,
    trace_segment,
    walk_segment,
)

__all__ = [
    "ChordWindow",
    "SegmentFrame",
    "annulus_chord",
    "chord_half_length",
    "main_term_arccosh_integral",
    "main_term_closed_form",
    "main_term_integral",
    "path_annulus_length",
    "segment_annulus_length",
    "theta_average",
    "theta_regime_bound",
    "trace_closed_geodesic",
    "trace_segment",
    "walk_segment",
]

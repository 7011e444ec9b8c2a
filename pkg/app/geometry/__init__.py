"""
Upper half-plane geometry.
"""

from .hyperbolic import (
    GeodesicLine,
    Isometry,
    PointH,
    Tangent,
    act,
    axis_frame,
    axis_tangent,
    dist,
    foot_and_offset,
    geodesic_flow,
    geodesic_through,
    isometry_to_tangent,
    mobius_apply,
    tangent_to_isometry,
    u_invariant,
)

__all__ = [
    "GeodesicLine",
    "Isometry",
    "PointH",
    "Tangent",
    "act",
    "axis_frame",
    "axis_tangent",
    "dist",
    "foot_and_offset",
    "geodesic_flow",
    "geodesic_through",
    "isometry_to_tangent",
    "mobius_apply",
    "tangent_to_isometry",
    "u_invariant",
]

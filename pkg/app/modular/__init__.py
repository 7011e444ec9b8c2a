"""
The modular surface.
"""

from .surface import (
    DEFAULT_HIT_CAP,
    GammaElement,
    ReducedPoint,
    TranslateHit,
    count_lattice,
    enumerate_translates,
    flow_on_surface,
    in_F,
    in_F_A,
    kernel_value,
    min_spacing,
    reduce_point,
    reduce_tangent,
    translate_images,
)

__all__ = [
    "DEFAULT_HIT_CAP",
    "GammaElement",
    "ReducedPoint",
    "TranslateHit",
    "count_lattice",
    "enumerate_translates",
    "flow_on_surface",
    "in_F",
    "in_F_A",
    "kernel_value",
    "min_spacing",
    "reduce_point",
    "reduce_tangent",
    "translate_images",
]

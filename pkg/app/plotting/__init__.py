"""
SVG pictures of closed geodesics on the modular surface.
"""

from .geodesics import FoldedClass, GeodesicPiece, fold_classes, fold_cycle, fold_geodesic
from .svg import draw_folded_svg, render_geodesics_svg, save_folded_svg, write_geodesics_svg

__all__ = [
    "FoldedClass",
    "GeodesicPiece",
    "draw_folded_svg",
    "fold_classes",
    "fold_cycle",
    "fold_geodesic",
    "render_geodesics_svg",
    "save_folded_svg",
    "write_geodesics_svg",
]

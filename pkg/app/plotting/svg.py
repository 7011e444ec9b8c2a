"""
SVG pictures of the closed geodesics of a discriminant on F, drawn with
matplotlib.

The picture spans -0.6 <= x <= 0.6 and 0 <= y <= top. Each narrow class is
one line whose pieces are separated by NaN, saved under the group id
geodesic-class-<a>_<b>_<c> of its reduced representative.
"""

import io
import logging
import math
import os

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from app.forms import FormCache
from app.plotting.geodesics import FoldedClass, GeodesicPiece, fold_classes

logger = logging.getLogger(__name__)

X_MIN, X_MAX = -0.6, 0.6
MIN_TOP = 1.5
DPI = 100
ARC_RESOLUTION = math.pi / 360
SVG_RC = {"svg.hashsalt": "geodesic-variance-lab", "svg.fonttype": "none"}


def piece_points(piece: GeodesicPiece) -> tuple[np.ndarray, np.ndarray]:
    """Points along one piece: its two ends if vertical, else a sampled arc."""
    if piece.is_vertical:
        return np.array([piece.start.x, piece.end.x]), np.array([piece.start.y, piece.end.y])
    centre = piece.centre
    first = math.atan2(piece.start.y, piece.start.x - centre)
    last = math.atan2(piece.end.y, piece.end.x - centre)
    count = max(2, math.ceil(abs(last - first) / ARC_RESOLUTION) + 1)
    theta = np.linspace(first, last, count)
    return centre + piece.radius * np.cos(theta), piece.radius * np.sin(theta)


def class_polyline(folded: FoldedClass) -> tuple[np.ndarray, np.ndarray]:
    xs, ys = [], []
    for piece in folded.pieces:
        x, y = piece_points(piece)
        xs.extend([x, [np.nan]])
        ys.extend([y, [np.nan]])
    return np.concatenate(xs), np.concatenate(ys)


def class_group_id(folded: FoldedClass) -> str:
    a, b, c = folded.form.as_tuple()
    return f"geodesic-class-{a}_{b}_{c}"


def geodesics_figure(D: int, folded: list[FoldedClass], width: int = 800) -> Figure:
    top = max(MIN_TOP, 1.1 * max(item.max_height() for item in folded))
    height = width * top / (X_MAX - X_MIN)
    fig = Figure(figsize=(width / DPI, height / DPI), dpi=DPI)
    ax = fig.add_axes((0.0, 0.0, 1.0, 1.0))
    ax.set_xlim(X_MIN, X_MAX)
    ax.set_ylim(0.0, top)
    ax.set_aspect("equal")
    ax.axis("off")

    theta = np.linspace(2 * math.pi / 3, math.pi / 3, 121)
    outline_x = np.concatenate([[-0.5], np.cos(theta), [0.5]])
    outline_y = np.concatenate([[top], np.sin(theta), [top]])
    ax.plot(outline_x, outline_y, color="black", linewidth=1.0, gid="fundamental-domain")

    colours = matplotlib.colormaps["hsv"](np.linspace(0.0, 1.0, len(folded), endpoint=False))
    for colour, item in zip(colours, folded):
        xs, ys = class_polyline(item)
        ax.plot(xs, ys, color=colour, linewidth=0.8, gid=class_group_id(item))
    return fig


def _save(fig: Figure, target, D: int) -> None:
    with matplotlib.rc_context(SVG_RC):
        fig.savefig(target, format="svg", metadata={"Title": f"Closed geodesics of discriminant {D}", "Date": None})


def draw_folded_svg(D: int, folded: list[FoldedClass], width: int = 800) -> str:
    buffer = io.StringIO()
    _save(geodesics_figure(D, folded, width), buffer, D)
    return buffer.getvalue()


def render_geodesics_svg(
    D: int,
    cache: FormCache,
    width: int = 800,
    step: float = 0.05,
    max_pieces: int = 10_000,
) -> str:
    folded = fold_classes(D, cache, step, max_pieces)
    pieces = sum(len(item.pieces) for item in folded)
    logger.info(f"D={D}: {len(folded)} classes, {pieces} pieces")
    return draw_folded_svg(D, folded, width)


def save_folded_svg(D: int, folded: list[FoldedClass], path: str, width: int = 800) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    _save(geodesics_figure(D, folded, width), path, D)
    logger.info(f"Wrote {path}")
    return path


def write_geodesics_svg(
    D: int,
    path: str,
    cache: FormCache,
    width: int = 800,
    step: float = 0.05,
    max_pieces: int = 10_000,
) -> str:
    return save_folded_svg(D, fold_classes(D, cache, step, max_pieces), path, width)

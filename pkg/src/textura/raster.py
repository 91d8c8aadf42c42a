"""Anti-aliased coverage rasterization and alpha-mask extraction.

A mask value is the fraction of the pixel's area inside the filled
region, so fully interior pixels read 1.0 and edges fade smoothly. The
binary inside/outside definition is the special case where no pixel
straddles a boundary.
"""

from __future__ import annotations

import io
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass

import numpy as np
from PIL import Image

from . import kernels
from .geometry import Contour, CubicSegment, Point2, split_at
from .svgpath import parse_svg_path

__all__ = [
    "RasterImage",
    "AlphaMask",
    "flatten",
    "rasterize",
    "mask_from_alpha",
    "load_rgba_png",
    "write_mask_png",
    "SvgDocument",
    "load_svg_document",
]

DEFAULT_FLATTEN_TOL = 0.25
DEFAULT_SUBSAMPLES = 16
_MAX_FLATTEN_DEPTH = 32


@dataclass(frozen=True)
class RasterImage:
    """Row-major RGBA pixels, 8 bits per channel, straight alpha."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        p = self.pixels
        if p.ndim != 3 or p.shape[2] != 4 or p.dtype != np.uint8:
            raise ValueError("RasterImage wants (H, W, 4) uint8 pixels")
        if p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("image dimensions must be >= 1")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True)
class AlphaMask:
    """Per-pixel coverage in [0, 1], row-major."""

    values: np.ndarray

    def __post_init__(self) -> None:
        v = self.values
        if v.ndim != 2:
            raise ValueError("AlphaMask wants a (H, W) array")
        if v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError("mask dimensions must be >= 1")
        if v.min() < 0.0 or v.max() > 1.0:
            raise ValueError("mask values must lie in [0, 1]")

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]


def flatten(seg: CubicSegment, tol: float) -> list[Point2]:
    """Approximate a cubic by a polyline within tol of the true curve.

    Splits at the midpoint until both control points sit within tol of
    the chord. Endpoints are passed through untouched.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    points = [seg.p0]
    _flatten_into(seg, tol, 0, points)
    return points


def _flatten_into(seg: CubicSegment, tol: float, depth: int, out: list[Point2]) -> None:
    if depth >= _MAX_FLATTEN_DEPTH or _is_flat(seg, tol):
        out.append(seg.p3)
        return
    left, right = split_at(seg, 0.5)
    _flatten_into(left, tol, depth + 1, out)
    _flatten_into(right, tol, depth + 1, out)


def _is_flat(seg: CubicSegment, tol: float) -> bool:
    return (
        _point_segment_dist(seg.c1, seg.p0, seg.p3) <= tol
        and _point_segment_dist(seg.c2, seg.p0, seg.p3) <= tol
    )


def _point_segment_dist(p: Point2, a: Point2, b: Point2) -> float:
    abx, aby = b.x - a.x, b.y - a.y
    apx, apy = p.x - a.x, p.y - a.y
    denom = abx * abx + aby * aby
    if denom == 0.0:
        return math.hypot(apx, apy)
    t = (apx * abx + apy * aby) / denom
    t = min(1.0, max(0.0, t))
    return math.hypot(apx - t * abx, apy - t * aby)


def _contours_to_edges(contours, tol: float) -> np.ndarray:
    """Flatten contours into a watertight (N, 4) edge array [x0,y0,x1,y1]."""
    rows: list[tuple[float, float, float, float]] = []
    for contour in contours:
        poly: list[Point2] = []
        for seg in contour.segments:
            pts = flatten(seg, tol)
            if poly:
                pts = pts[1:]  # segment start repeats the previous end
            poly.extend(pts)
        if len(poly) < 2:
            continue
        if poly[-1] != poly[0]:
            # Contour closure allows a 1e-9 slack; the polygon must not.
            poly.append(poly[0])
        for a, b in zip(poly, poly[1:]):
            if a != b:
                rows.append((a.x, a.y, b.x, b.y))
    if not rows:
        return np.zeros((0, 4), dtype=np.float64)
    return np.asarray(rows, dtype=np.float64)


def rasterize(
    contours,
    width: int,
    height: int,
    fill_rule: str = "nonzero",
    flatten_tol: float = DEFAULT_FLATTEN_TOL,
    subsamples: int = DEFAULT_SUBSAMPLES,
) -> AlphaMask:
    """Scanline-coverage rasterization of closed contours.

    Every pixel value is the covered area fraction under the fill rule
    ("nonzero" or "evenodd"). An empty contour list gives an all-zero
    mask. Horizontal coverage is analytic; vertical coverage uses
    `subsamples` sub-scanlines per pixel row.
    """
    if width < 1 or height < 1:
        raise ValueError("mask dimensions must be >= 1")
    if fill_rule not in ("nonzero", "evenodd"):
        raise ValueError(f"unknown fill rule {fill_rule!r}")
    edges = _contours_to_edges(contours, flatten_tol)
    values = kernels.coverage_accumulate(
        edges, width, height, fill_rule == "evenodd", subsamples
    )
    np.clip(values, 0.0, 1.0, out=values)
    return AlphaMask(values)


def mask_from_alpha(image: RasterImage) -> AlphaMask:
    """Extract the transparency channel as a coverage mask (alpha / 255)."""
    return AlphaMask(image.pixels[:, :, 3].astype(np.float64) / 255.0)


def load_rgba_png(data: bytes) -> RasterImage:
    """Decode PNG bytes to RGBA (alpha filled with 255 when absent)."""
    with Image.open(io.BytesIO(data)) as im:
        rgba = im.convert("RGBA")
        return RasterImage(np.asarray(rgba, dtype=np.uint8))


def write_mask_png(mask: AlphaMask, path: str) -> None:
    """Dump a mask as 8-bit grayscale PNG (debugging aid)."""
    gray = np.floor(mask.values * 255.0 + 0.5).astype(np.uint8)
    Image.fromarray(gray, mode="L").save(path, format="PNG")


@dataclass(frozen=True)
class SvgDocument:
    contours: tuple[Contour, ...]
    width: float | None
    height: float | None


def load_svg_document(text: str) -> SvgDocument:
    """Extract path contours from an SVG document.

    Honors `path` elements, `translate` transforms on groups, and the
    document width/height (falling back to the viewBox). Everything else
    in the SVG vocabulary is ignored.
    """
    root = ET.fromstring(text)
    if _local_name(root.tag) != "svg":
        raise ValueError("not an SVG document")
    width = _parse_length(root.get("width"))
    height = _parse_length(root.get("height"))
    if (width is None or height is None) and root.get("viewBox"):
        parts = root.get("viewBox").replace(",", " ").split()
        if len(parts) == 4:
            width = width if width is not None else float(parts[2])
            height = height if height is not None else float(parts[3])

    contours: list[Contour] = []
    _collect_paths(root, 0.0, 0.0, contours)
    return SvgDocument(contours=tuple(contours), width=width, height=height)


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _parse_length(value: str | None) -> float | None:
    if value is None:
        return None
    v = value.strip()
    if v.endswith("px"):
        v = v[:-2]
    try:
        return float(v)
    except ValueError:
        return None


def _parse_translate(transform: str | None) -> tuple[float, float]:
    if not transform:
        return 0.0, 0.0
    t = transform.strip()
    if not t.startswith("translate"):
        return 0.0, 0.0
    inner = t[t.index("(") + 1 : t.rindex(")")]
    parts = [p for p in inner.replace(",", " ").split() if p]
    tx = float(parts[0]) if parts else 0.0
    ty = float(parts[1]) if len(parts) > 1 else 0.0
    return tx, ty


def _collect_paths(elem, dx: float, dy: float, out: list[Contour]) -> None:
    name = _local_name(elem.tag)
    if name == "g":
        tx, ty = _parse_translate(elem.get("transform"))
        dx, dy = dx + tx, dy + ty
    elif name == "path":
        d = elem.get("d", "")
        for contour in parse_svg_path(d):
            out.append(contour.translated(dx, dy) if (dx or dy) else contour)
        return
    for child in elem:
        _collect_paths(child, dx, dy, out)

"""Font loading and glyph outline extraction via fontTools.

Outlines come out in the font's native orientation (y grows upward,
winding as stored in the font) with the em square scaled to the caller's
pixel size. TrueType quadratics are degree-elevated so every contour is
uniform cubics. Image-space flipping is the layout step's business.
"""

from __future__ import annotations

import io
from functools import lru_cache

from fontTools.pens.basePen import BasePen
from fontTools.ttLib import TTFont, TTLibError

from .geometry import (
    Contour,
    CubicSegment,
    GlyphOutline,
    Point2,
    line_to_cubic,
    normalize_to_cubics,
)

__all__ = [
    "UnsupportedFont",
    "MissingGlyph",
    "FontFace",
    "outline_from_font",
]

# Well-known fallback locations for a usable default face.
DEFAULT_FONT_PATHS = (
    "/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf",
    "/usr/share/fonts/truetype/freefont/FreeSans.ttf",
    "/usr/share/fonts/TTF/DejaVuSans.ttf",
    "/Library/Fonts/Arial Unicode.ttf",
)


class UnsupportedFont(ValueError):
    """The byte blob is not a parseable outline font."""


class MissingGlyph(KeyError):
    """The font has no glyph for the requested codepoint."""

    def __init__(self, char: str) -> None:
        super().__init__(f"no glyph for {char!r} (U+{ord(char):04X})")
        self.char = char


class _CubicPen(BasePen):
    """Collects pen callbacks as closed contours of cubic segments."""

    def __init__(self, glyph_set, scale: float) -> None:
        super().__init__(glyph_set)
        self.scale = scale
        self.contours: list[Contour] = []
        self._segments: list[CubicSegment] = []
        self._start: Point2 | None = None
        self._current: Point2 | None = None

    def _pt(self, pt) -> Point2:
        return Point2(pt[0] * self.scale, pt[1] * self.scale)

    def _moveTo(self, pt) -> None:
        self._start = self._current = self._pt(pt)
        self._segments = []

    def _lineTo(self, pt) -> None:
        p = self._pt(pt)
        if p != self._current:
            self._segments.append(line_to_cubic(self._current, p))
        self._current = p

    def _curveToOne(self, pt1, pt2, pt3) -> None:
        c1, c2, p3 = self._pt(pt1), self._pt(pt2), self._pt(pt3)
        self._segments.append(CubicSegment(self._current, c1, c2, p3))
        self._current = p3

    def _qCurveToOne(self, pt1, pt2) -> None:
        q, p2 = self._pt(pt1), self._pt(pt2)
        self._segments.append(normalize_to_cubics(self._current, q, p2))
        self._current = p2

    def _closePath(self) -> None:
        if self._current != self._start:
            self._segments.append(line_to_cubic(self._current, self._start))
        if self._segments:
            self.contours.append(Contour(self._segments))
        self._segments = []
        self._current = self._start

    def _endPath(self) -> None:
        # Fonts should not contain open paths; close them defensively.
        self._closePath()


class FontFace:
    """A parsed font plus the lookups the layout step needs."""

    def __init__(self, font_bytes: bytes) -> None:
        try:
            self._font = TTFont(io.BytesIO(font_bytes), lazy=True)
            self._upem = self._font["head"].unitsPerEm
            self._cmap = self._font.getBestCmap()
            self._glyph_set = self._font.getGlyphSet()
        except (MemoryError, KeyboardInterrupt, SystemExit):
            raise
        except (TTLibError, Exception) as exc:
            # fontTools raises a grab-bag of exception types on truncated
            # or hostile files; they all mean the same thing to callers.
            raise UnsupportedFont(f"cannot parse font: {exc}") from exc

    @property
    def units_per_em(self) -> int:
        return self._upem

    def has_glyph(self, char: str) -> bool:
        return ord(char) in self._cmap

    def _glyph_name(self, char: str) -> str:
        name = self._cmap.get(ord(char))
        if name is None:
            raise MissingGlyph(char)
        return name

    def outline(self, char: str, size_px: float) -> GlyphOutline:
        """Extract the glyph outline with the em square scaled to size_px."""
        if size_px <= 0:
            raise ValueError("size_px must be positive")
        name = self._glyph_name(char)
        pen = _CubicPen(self._glyph_set, size_px / self._upem)
        self._glyph_set[name].draw(pen)
        return GlyphOutline(contours=tuple(pen.contours), units_per_em=size_px)

    def advance(self, char: str, size_px: float) -> float:
        """Horizontal advance width of the glyph, in canvas units."""
        name = self._glyph_name(char)
        width, _lsb = self._font["hmtx"][name]
        return width * size_px / self._upem


@lru_cache(maxsize=8)
def _face_cache(font_bytes: bytes) -> FontFace:
    return FontFace(font_bytes)


def load_face(font_bytes: bytes) -> FontFace:
    """Parse (or fetch from cache) a font face from raw file bytes."""
    return _face_cache(font_bytes)


def outline_from_font(font_bytes: bytes, codepoint: str, size_px: float) -> GlyphOutline:
    """Outline of a single glyph, em square mapped to size_px.

    Whitespace glyphs yield an outline with zero contours (not an error),
    so word layout can skip them while still consuming their advance.
    """
    if len(codepoint) != 1:
        raise ValueError("codepoint must be a single character")
    return load_face(font_bytes).outline(codepoint, size_px)


def find_default_font() -> str | None:
    """First existing well-known font path, or None."""
    import os

    for path in DEFAULT_FONT_PATHS:
        if os.path.exists(path):
            return path
    return None

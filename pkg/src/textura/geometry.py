"""Cubic Bezier contour representation and arc-length machinery.

Everything downstream (rasterization, SVG parsing, font outlines) speaks
one uniform currency: closed contours made of cubic segments. Quadratics
and lines are degree-elevated on entry so later stages never branch on
segment kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

CLOSURE_TOL = 1e-9

# Arc-length bisection guards: depth bound keeps pathological segments from
# recursing forever; the absolute floor treats sub-nanometre polygons as flat.
_MAX_SPLIT_DEPTH = 48
_ABS_FLAT = 1e-14


class Point2(NamedTuple):
    x: float
    y: float

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y)


class CubicSegment(NamedTuple):
    """One cubic Bezier span: endpoints p0/p3, control points c1/c2."""

    p0: Point2
    c1: Point2
    c2: Point2
    p3: Point2

    def point_at(self, t: float) -> Point2:
        """Evaluate the Bernstein form at parameter t."""
        u = 1.0 - t
        b0 = u * u * u
        b1 = 3.0 * u * u * t
        b2 = 3.0 * u * t * t
        b3 = t * t * t
        return Point2(
            b0 * self.p0.x + b1 * self.c1.x + b2 * self.c2.x + b3 * self.p3.x,
            b0 * self.p0.y + b1 * self.c1.y + b2 * self.c2.y + b3 * self.p3.y,
        )

    def is_degenerate(self) -> bool:
        """True when all four control points coincide (zero-length span)."""
        return self.p0 == self.c1 == self.c2 == self.p3

    def translated(self, dx: float, dy: float) -> "CubicSegment":
        return CubicSegment(*(Point2(p.x + dx, p.y + dy) for p in self))


@dataclass(frozen=True)
class Contour:
    """Closed loop of cubic segments: each end meets the next start."""

    segments: tuple[CubicSegment, ...]

    def __init__(self, segments) -> None:
        segs = tuple(segments)
        if not segs:
            raise ValueError("contour needs at least one segment")
        for a, b in zip(segs, segs[1:] + segs[:1]):
            if _dist(a.p3, b.p0) > CLOSURE_TOL:
                raise ValueError(
                    f"contour not closed: segment ends at {a.p3}, next starts at {b.p0}"
                )
        object.__setattr__(self, "segments", segs)

    def translated(self, dx: float, dy: float) -> "Contour":
        return Contour(s.translated(dx, dy) for s in self.segments)

    def control_points(self):
        for seg in self.segments:
            yield from seg


@dataclass(frozen=True)
class GlyphOutline:
    """Vector shape of a glyph (or laid-out word) in canvas units."""

    contours: tuple[Contour, ...]
    units_per_em: float
    bounding_box: tuple[Point2, Point2] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.units_per_em <= 0:
            raise ValueError("units_per_em must be positive")
        contours = tuple(self.contours)
        object.__setattr__(self, "contours", contours)
        if self.bounding_box is None:
            object.__setattr__(self, "bounding_box", _bbox_of(contours))

    @property
    def is_empty(self) -> bool:
        return not self.contours


def _bbox_of(contours) -> tuple[Point2, Point2]:
    xs = [p.x for c in contours for p in c.control_points()]
    ys = [p.y for c in contours for p in c.control_points()]
    if not xs:
        return (Point2(0.0, 0.0), Point2(0.0, 0.0))
    return (Point2(min(xs), min(ys)), Point2(max(xs), max(ys)))


def _dist(a: Point2, b: Point2) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def normalize_to_cubics(p0: Point2, q: Point2, p2: Point2) -> CubicSegment:
    """Exact degree elevation of a quadratic Bezier to a cubic.

    The elevated control points are c1 = p0 + (2/3)(q - p0) and
    c2 = p2 + (2/3)(q - p2); the cubic traces the identical point set.
    """
    c1 = Point2(p0.x + 2.0 / 3.0 * (q.x - p0.x), p0.y + 2.0 / 3.0 * (q.y - p0.y))
    c2 = Point2(p2.x + 2.0 / 3.0 * (q.x - p2.x), p2.y + 2.0 / 3.0 * (q.y - p2.y))
    return CubicSegment(p0, c1, c2, p2)


def line_to_cubic(p0: Point2, p3: Point2) -> CubicSegment:
    """Represent a straight edge as a cubic with thirds-point controls."""
    c1 = Point2(p0.x + (p3.x - p0.x) / 3.0, p0.y + (p3.y - p0.y) / 3.0)
    c2 = Point2(p0.x + 2.0 * (p3.x - p0.x) / 3.0, p0.y + 2.0 * (p3.y - p0.y) / 3.0)
    return CubicSegment(p0, c1, c2, p3)


def split_at(seg: CubicSegment, t: float) -> tuple[CubicSegment, CubicSegment]:
    """De Casteljau split at parameter t; the halves share the split point."""
    p0, c1, c2, p3 = seg

    def lerp(a: Point2, b: Point2) -> Point2:
        return Point2(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)

    q0 = lerp(p0, c1)
    q1 = lerp(c1, c2)
    q2 = lerp(c2, p3)
    r0 = lerp(q0, q1)
    r1 = lerp(q1, q2)
    s = lerp(r0, r1)
    return CubicSegment(p0, q0, r0, s), CubicSegment(s, r1, q2, p3)


def arc_length(seg: CubicSegment, rel_tol: float = 1e-6) -> float:
    """Arc length by adaptive de Casteljau bisection.

    Splits until the control-polygon length agrees with the chord within
    rel_tol (relative to the chord), then takes the (2*chord + polygon)/3
    estimate, whose error vanishes quadratically with the gap.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    return _arc_length_rec(seg, rel_tol, 0)


def _arc_length_rec(seg: CubicSegment, rel_tol: float, depth: int) -> float:
    p0, c1, c2, p3 = seg
    chord = _dist(p0, p3)
    poly = _dist(p0, c1) + _dist(c1, c2) + _dist(c2, p3)
    if poly - chord <= rel_tol * chord or poly < _ABS_FLAT or depth >= _MAX_SPLIT_DEPTH:
        return (2.0 * chord + poly) / 3.0
    left, right = split_at(seg, 0.5)
    return _arc_length_rec(left, rel_tol, depth + 1) + _arc_length_rec(
        right, rel_tol, depth + 1
    )


def _split_prefix_of_length(
    seg: CubicSegment, target: float, rel_tol: float
) -> tuple[CubicSegment, CubicSegment]:
    """Split so the left piece has arc length ~= target (bisection on t)."""
    lo, hi = 0.0, 1.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        left, _right = split_at(seg, mid)
        if arc_length(left, rel_tol) < target:
            lo = mid
        else:
            hi = mid
    return split_at(seg, 0.5 * (lo + hi))


def subdivide_by_arc_length(
    outline: GlyphOutline, max_segment_length: float, rel_tol: float = 1e-6
) -> GlyphOutline:
    """Split segments until none is longer than max_segment_length.

    Each over-long segment is cut into equal-arc-length pieces (the piece
    count is the smallest that satisfies the bound), so the output traces
    the identical curve and stays closed.
    """
    if max_segment_length <= 0:
        raise ValueError("max_segment_length must be positive")
    new_contours = []
    for contour in outline.contours:
        pieces: list[CubicSegment] = []
        for seg in contour.segments:
            pieces.extend(_subdivide_segment(seg, max_segment_length, rel_tol))
        new_contours.append(Contour(pieces))
    return GlyphOutline(
        contours=tuple(new_contours),
        units_per_em=outline.units_per_em,
    )


def _subdivide_segment(
    seg: CubicSegment, max_len: float, rel_tol: float
) -> list[CubicSegment]:
    total = arc_length(seg, rel_tol)
    if total <= max_len * (1.0 + 1e-9):
        return [seg]
    n = math.ceil(total / max_len - 1e-9)
    pieces = []
    remaining = seg
    remaining_len = total
    for k in range(n, 1, -1):
        target = remaining_len / k
        left, remaining = _split_prefix_of_length(remaining, target, rel_tol)
        pieces.append(left)
        remaining_len -= target
    pieces.append(remaining)
    return pieces


def contours_to_path_data(contours) -> str:
    """Serialize contours as absolute SVG path syntax (debug dump).

    Floats are written with repr so re-parsing restores the exact bits.
    """
    parts = []
    for contour in contours:
        start = contour.segments[0].p0
        parts.append(f"M {start.x!r} {start.y!r}")
        for seg in contour.segments:
            parts.append(
                f"C {seg.c1.x!r} {seg.c1.y!r} {seg.c2.x!r} {seg.c2.y!r} "
                f"{seg.p3.x!r} {seg.p3.y!r}"
            )
        parts.append("Z")
    return " ".join(parts)

"""SVG 1.1 path-data parser producing closed cubic contours.

Supported commands: M/m L/l H/h V/v C/c S/s Q/q T/t Z/z. Lines and
quadratics are promoted to cubics on the way in; open subpaths are closed
with a straight segment so the rasterizer always sees closed regions.
Elliptical arcs (A/a) are rejected outright.
"""

from __future__ import annotations

import re

from .geometry import (
    CLOSURE_TOL,
    Contour,
    CubicSegment,
    Point2,
    line_to_cubic,
    normalize_to_cubics,
)

__all__ = ["ParseError", "UnsupportedCommand", "parse_svg_path"]


class ParseError(ValueError):
    """Malformed path data; carries the offset and offending token."""

    def __init__(self, message: str, offset: int, token: str) -> None:
        super().__init__(f"{message} at offset {offset}: {token!r}")
        self.offset = offset
        self.token = token


class UnsupportedCommand(ParseError):
    """Command is valid SVG but outside this parser's grammar (arcs)."""


_NUMBER = re.compile(r"[+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")
_WSP_COMMA = re.compile(r"[\s,]*")
_WSP = re.compile(r"\s*")
_COMMANDS = set("MmLlHhVvCcSsQqTtZz")


class _Scanner:
    def __init__(self, d: str) -> None:
        self.d = d
        self.pos = 0

    def skip_separators(self) -> None:
        self.pos = _WSP_COMMA.match(self.d, self.pos).end()

    def skip_wsp(self) -> None:
        self.pos = _WSP.match(self.d, self.pos).end()

    def at_end(self) -> bool:
        return self.pos >= len(self.d)

    def peek(self) -> str:
        return self.d[self.pos]

    def take_number(self, context: str) -> float:
        self.skip_separators()
        if self.at_end():
            raise ParseError(
                f"expected number for {context}, got end of input",
                len(self.d),
                "<eof>",
            )
        m = _NUMBER.match(self.d, self.pos)
        if m is None:
            raise ParseError(
                f"expected number for {context}", self.pos, self._token_here()
            )
        self.pos = m.end()
        return float(m.group())

    def _token_here(self) -> str:
        tail = self.d[self.pos : self.pos + 16]
        return tail.split()[0] if tail.split() else tail


def parse_svg_path(d: str) -> list[Contour]:
    """Parse a path `d` attribute string into closed cubic contours.

    Raises ParseError (with offset and token) on malformed input and
    UnsupportedCommand for elliptical arcs.
    """
    scanner = _Scanner(d)
    builder = _ContourBuilder()
    current = Point2(0.0, 0.0)
    subpath_start = Point2(0.0, 0.0)
    prev_cubic_c2: Point2 | None = None
    prev_quad_q: Point2 | None = None
    command: str | None = None

    scanner.skip_wsp()
    while not scanner.at_end():
        ch = scanner.peek()
        if ch in _COMMANDS:
            command = ch
            scanner.pos += 1
        elif ch in "Aa":
            raise UnsupportedCommand(
                "elliptical arc commands are not supported", scanner.pos, ch
            )
        elif command is None:
            raise ParseError("path must start with a command", scanner.pos, ch)
        elif _NUMBER.match(d, scanner.pos) is None:
            raise ParseError("expected command or number", scanner.pos, ch)
        else:
            # Implicit repetition; extra pairs after a moveto become linetos.
            if command == "M":
                command = "L"
            elif command == "m":
                command = "l"
            elif command in "Zz":
                raise ParseError(
                    "coordinates after closepath need a command", scanner.pos, ch
                )

        rel = command.islower()
        op = command.upper()

        if op == "M":
            x = scanner.take_number("moveto x")
            y = scanner.take_number("moveto y")
            if rel:
                x, y = current.x + x, current.y + y
            builder.finish_subpath(current)
            current = Point2(x, y)
            subpath_start = current
            builder.start_subpath(current)
        elif op == "Z":
            current = builder.close_subpath(current, subpath_start)
            builder.start_subpath(current)
        elif op == "L":
            x = scanner.take_number("lineto x")
            y = scanner.take_number("lineto y")
            if rel:
                x, y = current.x + x, current.y + y
            current = builder.line(current, Point2(x, y))
        elif op == "H":
            x = scanner.take_number("horizontal lineto x")
            if rel:
                x = current.x + x
            current = builder.line(current, Point2(x, current.y))
        elif op == "V":
            y = scanner.take_number("vertical lineto y")
            if rel:
                y = current.y + y
            current = builder.line(current, Point2(current.x, y))
        elif op == "C":
            nums = [scanner.take_number("curveto coordinate") for _ in range(6)]
            if rel:
                nums = [
                    n + (current.x if i % 2 == 0 else current.y)
                    for i, n in enumerate(nums)
                ]
            c1 = Point2(nums[0], nums[1])
            c2 = Point2(nums[2], nums[3])
            end = Point2(nums[4], nums[5])
            builder.cubic(current, c1, c2, end)
            current = end
            prev_cubic_c2 = c2
        elif op == "S":
            nums = [scanner.take_number("smooth curveto coordinate") for _ in range(4)]
            if rel:
                nums = [
                    n + (current.x if i % 2 == 0 else current.y)
                    for i, n in enumerate(nums)
                ]
            if prev_cubic_c2 is not None:
                c1 = Point2(
                    2.0 * current.x - prev_cubic_c2.x,
                    2.0 * current.y - prev_cubic_c2.y,
                )
            else:
                c1 = current
            c2 = Point2(nums[0], nums[1])
            end = Point2(nums[2], nums[3])
            builder.cubic(current, c1, c2, end)
            current = end
            prev_cubic_c2 = c2
        elif op == "Q":
            nums = [scanner.take_number("quadratic coordinate") for _ in range(4)]
            if rel:
                nums = [
                    n + (current.x if i % 2 == 0 else current.y)
                    for i, n in enumerate(nums)
                ]
            q = Point2(nums[0], nums[1])
            end = Point2(nums[2], nums[3])
            builder.quadratic(current, q, end)
            current = end
            prev_quad_q = q
        elif op == "T":
            nums = [scanner.take_number("smooth quadratic coordinate") for _ in range(2)]
            if rel:
                nums = [
                    n + (current.x if i % 2 == 0 else current.y)
                    for i, n in enumerate(nums)
                ]
            if prev_quad_q is not None:
                q = Point2(2.0 * current.x - prev_quad_q.x, 2.0 * current.y - prev_quad_q.y)
            else:
                q = current
            end = Point2(nums[0], nums[1])
            builder.quadratic(current, q, end)
            current = end
            prev_quad_q = q
        else:  # pragma: no cover - command set is exhaustive
            raise ParseError("unknown command", scanner.pos, command)

        # Control-point reflection only survives consecutive curve commands.
        if op not in ("C", "S"):
            prev_cubic_c2 = None
        if op not in ("Q", "T"):
            prev_quad_q = None
        scanner.skip_wsp()

    builder.finish_subpath(current)
    return builder.contours


class _ContourBuilder:
    def __init__(self) -> None:
        self.contours: list[Contour] = []
        self._segments: list[CubicSegment] = []
        self._start: Point2 | None = None

    def start_subpath(self, start: Point2) -> None:
        self._segments = []
        self._start = start

    def line(self, frm: Point2, to: Point2) -> Point2:
        if frm != to:
            self._segments.append(line_to_cubic(frm, to))
        return to

    def cubic(self, frm: Point2, c1: Point2, c2: Point2, end: Point2) -> None:
        self._segments.append(CubicSegment(frm, c1, c2, end))

    def quadratic(self, frm: Point2, q: Point2, end: Point2) -> None:
        self._segments.append(normalize_to_cubics(frm, q, end))

    def close_subpath(self, current: Point2, start: Point2) -> Point2:
        self._close(current, start)
        return start

    def finish_subpath(self, current: Point2) -> None:
        """Implicitly close whatever is open (mask math needs closed regions)."""
        if self._start is not None:
            self._close(current, self._start)
        self._segments = []
        self._start = None

    def _close(self, current: Point2, start: Point2) -> None:
        if not self._segments:
            return
        gap = abs(current.x - start.x) + abs(current.y - start.y)
        if gap > CLOSURE_TOL:
            self._segments.append(line_to_cubic(current, start))
        self.contours.append(Contour(self._segments))
        self._segments = []

"""Mask-weighted compositing of the tiled texture over a background color.

out = M * T' + (1 - M) * B per channel, evaluated on sRGB-encoded values
(matching the linear blend as written, not linear light), rounded
half-away-from-zero to 8 bits. The result is opaque RGB: the background
fills everything the mask does not claim.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass

import numpy as np
from PIL import Image

from .raster import AlphaMask
from .tiler import Canvas

__all__ = [
    "BackgroundColor",
    "ComposedImage",
    "DimensionMismatch",
    "InvalidColor",
    "composite",
    "parse_hex_color",
    "format_hex_color",
    "encode_png",
    "decode_png",
]


class DimensionMismatch(ValueError):
    """Mask and canvas sizes disagree."""


class InvalidColor(ValueError):
    """String is not #RGB or #RRGGBB."""


@dataclass(frozen=True)
class BackgroundColor:
    r: int = 255
    g: int = 255
    b: int = 255

    def __post_init__(self) -> None:
        for name in ("r", "g", "b"):
            v = getattr(self, name)
            if not isinstance(v, int) or not (0 <= v <= 255):
                raise ValueError(f"channel {name}={v!r} outside 0..255")


@dataclass(frozen=True)
class ComposedImage:
    """Opaque RGB output image, 8 bits per channel."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        p = self.pixels
        if p.ndim != 3 or p.shape[2] != 3 or p.dtype != np.uint8:
            raise ValueError("ComposedImage wants (H, W, 3) uint8 pixels")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def composite(
    mask: AlphaMask, textured: Canvas, background: BackgroundColor = BackgroundColor()
) -> ComposedImage:
    """Blend the tiled texture into the mask over a solid background."""
    if (mask.height, mask.width) != (textured.height, textured.width):
        raise DimensionMismatch(
            f"mask {mask.width}x{mask.height} vs canvas "
            f"{textured.width}x{textured.height}"
        )
    m = mask.values[:, :, None]
    tex = textured.pixels[:, :, :3].astype(np.float64)
    bg = np.array([background.r, background.g, background.b], dtype=np.float64)
    blended = m * tex + (1.0 - m) * bg
    return ComposedImage(np.floor(blended + 0.5).astype(np.uint8))


_HEX_COLOR = re.compile(r"#([0-9a-fA-F]{3}|[0-9a-fA-F]{6})\Z")


def parse_hex_color(text: str) -> BackgroundColor:
    """Parse "#RRGGBB" or shorthand "#RGB" (each digit doubled), any case."""
    m = _HEX_COLOR.match(text)
    if m is None:
        raise InvalidColor(f"not a #RGB/#RRGGBB color: {text!r}")
    digits = m.group(1)
    if len(digits) == 3:
        digits = "".join(d * 2 for d in digits)
    return BackgroundColor(
        int(digits[0:2], 16), int(digits[2:4], 16), int(digits[4:6], 16)
    )


def format_hex_color(color: BackgroundColor) -> str:
    return f"#{color.r:02X}{color.g:02X}{color.b:02X}"


def encode_png(image: ComposedImage) -> bytes:
    """Encode as 8-bit RGB PNG; decoding restores the exact pixels."""
    buf = io.BytesIO()
    Image.fromarray(image.pixels, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def decode_png(data: bytes) -> ComposedImage:
    with Image.open(io.BytesIO(data)) as im:
        return ComposedImage(np.asarray(im.convert("RGB"), dtype=np.uint8))

"""Modular tiling of a texture across a canvas.

No blending at seams: canvas(x, y) = texture(x mod tw, y mod th), with an
optional integer phase so future alignment features can shift the lattice.
Seamlessness is the texture's job, not the tiler's.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .resample import TextureImage

__all__ = ["Canvas", "tile"]


@dataclass(frozen=True)
class Canvas:
    """Tiled pixel field sized to match the text image."""

    pixels: np.ndarray

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def tile(
    texture: TextureImage,
    width: int,
    height: int,
    phase: tuple[int, int] = (0, 0),
) -> Canvas:
    """Repeat the texture over a width x height canvas, origin top-left.

    phase = (dx, dy) shifts the tile lattice so the texture's (0, 0) lands
    on canvas (dx, dy); partial tiles at the edges are cropped, never
    stretched.
    """
    if width < 1 or height < 1:
        raise ValueError("canvas dimensions must be >= 1")
    dx, dy = phase
    xi = (np.arange(width, dtype=np.int64) - dx) % texture.width
    yi = (np.arange(height, dtype=np.int64) - dy) % texture.height
    return Canvas(texture.pixels[np.ix_(yi, xi)])

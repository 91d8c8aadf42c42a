"""textura: deterministic semantic-typography texturing engine.

Turns a word's glyph outlines (or SVG text art) into an anti-aliased
coverage mask, scales a concept-driven texture with a windowed-sinc
filter, tiles it, and composites the result over a background color.
"""

__version__ = "0.1.0"

from .compositor import BackgroundColor, composite, parse_hex_color
from .geometry import Contour, CubicSegment, GlyphOutline, Point2
from .pipeline import Pipeline, SessionInputs, SessionStore
from .provider import ProviderConfig, build_prompt, procedural_pattern
from .raster import AlphaMask, mask_from_alpha, rasterize
from .resample import LanczosKernel, ScaleFactor, TextureImage, kernel_weight, resample
from .svgpath import parse_svg_path
from .tiler import tile

__all__ = [
    "__version__",
    "AlphaMask",
    "BackgroundColor",
    "Contour",
    "CubicSegment",
    "GlyphOutline",
    "LanczosKernel",
    "Pipeline",
    "Point2",
    "ProviderConfig",
    "ScaleFactor",
    "SessionInputs",
    "SessionStore",
    "TextureImage",
    "build_prompt",
    "composite",
    "kernel_weight",
    "mask_from_alpha",
    "parse_hex_color",
    "parse_svg_path",
    "procedural_pattern",
    "rasterize",
    "resample",
    "tile",
]

"""Windowed-sinc (Lanczos) texture scaling.

The kernel is L(x) = sinc(x) * sinc(x/a) for |x| < a and 0 outside, with
sinc(x) = sin(pi x)/(pi x). Scaling down stretches the kernel by 1/s so it
low-passes instead of point-sampling; per-sample weights are normalized to
sum to 1 so constant images survive untouched. Both passes run in float64
and quantize exactly once at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels

__all__ = [
    "TextureImage",
    "ScaleFactor",
    "LanczosKernel",
    "DegenerateOutput",
    "kernel_weight",
    "kernel_table",
    "resample",
    "resample_to",
]

DEFAULT_LOBES = 3


class DegenerateOutput(ValueError):
    """Requested output would have a zero dimension."""


@dataclass(frozen=True)
class TextureImage:
    """RGB or RGBA texture, 8-bit storage."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        p = self.pixels
        if p.ndim != 3 or p.shape[2] not in (3, 4) or p.dtype != np.uint8:
            raise ValueError("TextureImage wants (H, W, 3|4) uint8 pixels")
        if p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("texture dimensions must be >= 1")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def channels(self) -> int:
        return self.pixels.shape[2]


@dataclass(frozen=True)
class ScaleFactor:
    """Texture scale s, restricted to (0, 1] (shrink-only by contract)."""

    s: float

    def __post_init__(self) -> None:
        if not (0.0 < self.s <= 1.0) or not math.isfinite(self.s):
            raise ValueError(f"scale must lie in (0, 1], got {self.s}")


@dataclass(frozen=True)
class LanczosKernel:
    """Lobe count of the windowed sinc; 3 is the classic high-quality pick."""

    a: int = DEFAULT_LOBES

    def __post_init__(self) -> None:
        if self.a < 1:
            raise ValueError("lobe count must be >= 1")


def kernel_weight(x: float, a: int = DEFAULT_LOBES) -> float:
    """Evaluate L(x) = sinc(x) * sinc(x/a), zero for |x| >= a.

    Integer arguments are special-cased so the zero crossings (and the
    unit peak) are exact rather than ~1e-17 sine residue.
    """
    if a < 1:
        raise ValueError("lobe count must be >= 1")
    ax = abs(float(x))
    if ax >= a:
        return 0.0
    if ax == math.floor(ax):
        return 1.0 if ax == 0.0 else 0.0
    px = math.pi * ax
    return (math.sin(px) / px) * (math.sin(px / a) / (px / a))


def kernel_table(a: int = DEFAULT_LOBES, samples_per_unit: int = 64) -> np.ndarray:
    """(x, weight) rows sampling the kernel over [-a, a] (for CSV dumps)."""
    n = 2 * a * samples_per_unit
    xs = np.linspace(-a, a, n + 1)
    return np.column_stack([xs, [kernel_weight(x, a) for x in xs]])


def _axis_taps(
    in_size: int, out_size: int, s_axis: float, a: int, wrap: bool
) -> tuple[np.ndarray, np.ndarray]:
    """Tap indices and normalized weights for one separable pass.

    Output pixel centers sit at half-integers; center (o + 0.5) maps to
    source coordinate (o + 0.5) / s_axis. When minifying, the kernel is
    stretched by 1/s_axis so its footprint covers a/s_axis source pixels.
    """
    kscale = min(s_axis, 1.0)
    support = a / kscale
    centers = (np.arange(out_size, dtype=np.float64) + 0.5) / s_axis
    lo = np.ceil(centers - support - 0.5).astype(np.int64)
    taps = int(math.floor(2.0 * support + 1.0)) + 1
    idx = lo[:, None] + np.arange(taps, dtype=np.int64)[None, :]

    t = (idx + 0.5 - centers[:, None]) * kscale
    w = np.sinc(t) * np.sinc(t / a)
    on_integer = t == np.floor(t)
    w[on_integer] = 0.0
    w[on_integer & (t == 0.0)] = 1.0
    w[np.abs(t) >= a] = 0.0
    w /= w.sum(axis=1, keepdims=True)

    if wrap:
        idx = np.mod(idx, in_size)
    else:
        idx = np.clip(idx, 0, in_size - 1)
    return np.ascontiguousarray(idx), np.ascontiguousarray(w)


def _resample_float(
    pixels: np.ndarray,
    out_w: int,
    out_h: int,
    sx: float,
    sy: float,
    boundary: str,
    a: int,
) -> np.ndarray:
    """Two-pass separable resample; returns float64, unquantized."""
    if boundary not in ("clamp", "wrap"):
        raise ValueError(f"unknown boundary mode {boundary!r}")
    wrap = boundary == "wrap"
    in_h, in_w = pixels.shape[0], pixels.shape[1]
    img = np.ascontiguousarray(pixels, dtype=np.float64)

    idx_x, w_x = _axis_taps(in_w, out_w, sx, a, wrap)
    img = kernels.resample_axis1(img, idx_x, w_x)

    idx_y, w_y = _axis_taps(in_h, out_h, sy, a, wrap)
    img = np.ascontiguousarray(np.swapaxes(img, 0, 1))
    img = kernels.resample_axis1(img, idx_y, w_y)
    return np.swapaxes(img, 0, 1)


def _quantize(values: np.ndarray) -> np.ndarray:
    return np.floor(np.clip(values, 0.0, 255.0) + 0.5).astype(np.uint8)


def resample(
    texture: TextureImage,
    s: ScaleFactor | float,
    boundary: str = "clamp",
    kernel: LanczosKernel = LanczosKernel(),
) -> TextureImage:
    """Scale a texture by s in (0, 1]: T'(x, y) = T(x/s, y/s).

    Output dimensions are ceil(s * input); s = 1 reproduces the input
    bit-for-bit. Use boundary="wrap" when the result will be tiled so
    the filter sees the texture as periodic and seams stay seamless.
    """
    scale = s.s if isinstance(s, ScaleFactor) else ScaleFactor(float(s)).s
    out_w = math.ceil(scale * texture.width)
    out_h = math.ceil(scale * texture.height)
    if out_w < 1 or out_h < 1:
        raise DegenerateOutput(f"output would be {out_w}x{out_h}")
    values = _resample_float(
        texture.pixels, out_w, out_h, scale, scale, boundary, kernel.a
    )
    return TextureImage(_quantize(values))


def resample_to(
    texture: TextureImage,
    width: int,
    height: int,
    boundary: str = "clamp",
    kernel: LanczosKernel = LanczosKernel(),
) -> TextureImage:
    """Resample to explicit dimensions (provider-normalization path).

    Each axis uses its own scale out/in; magnification falls back to plain
    sinc interpolation (the kernel is only stretched when minifying).
    """
    if width < 1 or height < 1:
        raise DegenerateOutput(f"output would be {width}x{height}")
    if width == texture.width and height == texture.height:
        return texture
    values = _resample_float(
        texture.pixels,
        width,
        height,
        width / texture.width,
        height / texture.height,
        boundary,
        kernel.a,
    )
    return TextureImage(_quantize(values))

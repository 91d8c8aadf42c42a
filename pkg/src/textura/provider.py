"""Texture sources: a remote generation service, a local file, or a
deterministic procedural fallback.

The generation model itself lives behind the remote endpoint; this module
only owns the prompt template, the wire format (JSON request in, PNG body
out), and the guarantee that every provider hands back a texture of
exactly the requested dimensions.
"""

from __future__ import annotations

import colorsys
import os
from dataclasses import dataclass

import httpx
import numpy as np

from .raster import load_rgba_png
from .resample import TextureImage, resample_to

__all__ = [
    "PROMPT_TEMPLATE",
    "EmptyConcept",
    "ProviderTimeout",
    "ProviderRejected",
    "DecodeError",
    "TextureRequest",
    "ProviderConfig",
    "build_prompt",
    "fetch_texture",
    "procedural_pattern",
]

PROMPT_TEMPLATE = "Seamless repeating pattern of tiny and small "

DEFAULT_TEXTURE_SIZE = 512


class EmptyConcept(ValueError):
    """Concept is empty after trimming."""


class ProviderTimeout(RuntimeError):
    """The remote service did not answer within the configured timeout."""


class ProviderRejected(RuntimeError):
    """Remote service answered with a non-2xx status (body preserved)."""

    def __init__(self, status: int | None, body: str) -> None:
        super().__init__(f"provider rejected request (status={status}): {body[:200]}")
        self.status = status
        self.body = body


class DecodeError(ValueError):
    """Provider bytes did not decode as an image."""


def build_prompt(concept: str) -> str:
    """Apply the fixed prompt template to a concept, verbatim.

    Surrounding whitespace is trimmed; casing and interior spacing are
    the user's own.
    """
    trimmed = concept.strip()
    if not trimmed:
        raise EmptyConcept("concept must be non-empty")
    return PROMPT_TEMPLATE + trimmed


@dataclass(frozen=True)
class TextureRequest:
    concept: str
    prompt: str
    width: int = DEFAULT_TEXTURE_SIZE
    height: int = DEFAULT_TEXTURE_SIZE
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.prompt != build_prompt(self.concept):
            raise ValueError("prompt must be the template applied to concept")
        if self.width < 1 or self.height < 1:
            raise ValueError("texture dimensions must be >= 1")

    @classmethod
    def create(
        cls,
        concept: str,
        width: int = DEFAULT_TEXTURE_SIZE,
        height: int = DEFAULT_TEXTURE_SIZE,
        seed: int | None = None,
    ) -> "TextureRequest":
        return cls(
            concept=concept.strip(),
            prompt=build_prompt(concept),
            width=width,
            height=height,
            seed=seed,
        )


@dataclass(frozen=True)
class ProviderConfig:
    mode: str = "procedural"
    endpoint: str | None = None
    auth_token_source: str = "TEXTURA_PROVIDER_TOKEN"
    timeout: float = 60.0
    file_path: str | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("remote", "file", "procedural"):
            raise ValueError(f"unknown provider mode {self.mode!r}")
        if self.mode == "remote" and not self.endpoint:
            raise ValueError("remote mode requires an endpoint")
        if self.mode == "file" and not self.file_path:
            raise ValueError("file mode requires file_path")


def fetch_texture(request: TextureRequest, config: ProviderConfig) -> TextureImage:
    """Produce the texture for a request through the configured provider.

    Whatever the source returns is normalized to the requested dimensions,
    so downstream scaling math never has to care where pixels came from.
    """
    if config.mode == "procedural":
        return procedural_pattern(
            request.seed if request.seed is not None else 0,
            request.width,
            request.height,
        )
    if config.mode == "file":
        with open(config.file_path, "rb") as fh:
            texture = _decode_texture(fh.read())
    else:
        texture = _fetch_remote(request, config)
    if (texture.width, texture.height) != (request.width, request.height):
        texture = resample_to(texture, request.width, request.height)
    return texture


def _fetch_remote(request: TextureRequest, config: ProviderConfig) -> TextureImage:
    payload: dict = {
        "prompt": request.prompt,
        "width": request.width,
        "height": request.height,
    }
    if request.seed is not None:
        payload["seed"] = request.seed
    headers = {}
    token = os.environ.get(config.auth_token_source, "")
    if token:
        headers["Authorization"] = f"Bearer {token}"
    try:
        response = httpx.post(
            config.endpoint, json=payload, headers=headers, timeout=config.timeout
        )
    except httpx.TimeoutException as exc:
        raise ProviderTimeout(
            f"no response within {config.timeout}s from {config.endpoint}"
        ) from exc
    except httpx.HTTPError as exc:
        raise ProviderRejected(None, str(exc)) from exc
    if not (200 <= response.status_code < 300):
        raise ProviderRejected(response.status_code, response.text)
    return _decode_texture(response.content)


def _decode_texture(data: bytes) -> TextureImage:
    try:
        raster = load_rgba_png(data)
    except Exception as exc:
        raise DecodeError(f"cannot decode texture image: {exc}") from exc
    return TextureImage(raster.pixels)


def _fade(t: np.ndarray) -> np.ndarray:
    """Quintic fade 6t^5 - 15t^4 + 10t^3 (zero slope at lattice points)."""
    return t * t * t * (t * (t * 6.0 - 15.0) + 10.0)


def _periodic_value_noise(
    rng: np.random.Generator, width: int, height: int, cells_x: int, cells_y: int
) -> np.ndarray:
    """Value noise on a periodic lattice; opposite edges continue exactly."""
    grid = rng.random((cells_y, cells_x))
    u = np.arange(width, dtype=np.float64) * (cells_x / width)
    v = np.arange(height, dtype=np.float64) * (cells_y / height)
    iu = np.floor(u).astype(np.int64)
    iv = np.floor(v).astype(np.int64)
    fu = _fade(u - iu)
    fv = _fade(v - iv)
    iu0 = iu % cells_x
    iu1 = (iu + 1) % cells_x
    iv0 = iv % cells_y
    iv1 = (iv + 1) % cells_y

    g00 = grid[np.ix_(iv0, iu0)]
    g01 = grid[np.ix_(iv0, iu1)]
    g10 = grid[np.ix_(iv1, iu0)]
    g11 = grid[np.ix_(iv1, iu1)]
    top = g00 + fu[None, :] * (g01 - g00)
    bottom = g10 + fu[None, :] * (g11 - g10)
    return top + fv[:, None] * (bottom - top)


def procedural_pattern(seed: int, width: int, height: int) -> TextureImage:
    """Deterministic tileable blob pattern (offline stand-in for a model).

    Three octaves of periodic value noise drive the brightness of a
    seed-picked hue. Fully specified by (seed, width, height); the
    periodic lattice makes the left/right and top/bottom edges continue
    each other, which is what tiling needs.
    """
    if width < 1 or height < 1:
        raise ValueError("texture dimensions must be >= 1")
    rng = np.random.default_rng(seed)
    hue = rng.uniform(0.0, 1.0)
    sat = rng.uniform(0.35, 0.75)
    base = np.array(colorsys.hsv_to_rgb(hue, sat, 1.0))

    octaves = ((8, 8, 1.0), (16, 16, 0.5), (32, 32, 0.25))
    total = sum(amp for _, _, amp in octaves)
    value = np.zeros((height, width), dtype=np.float64)
    for cells_x, cells_y, amp in octaves:
        value += amp * _periodic_value_noise(rng, width, height, cells_x, cells_y)
    value /= total

    brightness = 0.25 + 0.70 * value
    rgb = brightness[:, :, None] * base[None, None, :] * 255.0
    return TextureImage(np.floor(rgb + 0.5).astype(np.uint8))

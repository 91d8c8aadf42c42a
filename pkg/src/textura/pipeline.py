"""End-to-end orchestration: inputs -> text mask -> texture -> composite.

A Session records everything needed to re-derive the composed image:
inputs, the fetched texture, the 8-bit coverage mask, scale, background.
Adjustments always recompute from the cached original texture (never the
previously scaled one), so sliding the scale around is lossless and
returning to an earlier value reproduces the earlier image exactly.
"""

from __future__ import annotations

import json
import os
import secrets
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone

import httpx
import numpy as np
from PIL import Image

from .compositor import BackgroundColor, ComposedImage, composite, encode_png, format_hex_color
from .fonts import load_face
from .geometry import Contour, CubicSegment, Point2
from .provider import ProviderConfig, TextureRequest, fetch_texture
from .raster import AlphaMask, load_svg_document, rasterize
from .resample import ScaleFactor, TextureImage, resample
from .tiler import tile

__all__ = [
    "SessionInputs",
    "Session",
    "SessionStore",
    "ReshapeClientConfig",
    "Pipeline",
    "reshape_text",
    "fit_to_canvas",
    "InvalidInputs",
    "InvalidScale",
    "UnknownSession",
    "NotYetGenerated",
    "LayoutError",
    "ReshapeTimeout",
    "ReshapeRejected",
]

DEFAULT_LONG_SIDE = 1024
DEFAULT_MARGIN = 8
DEFAULT_SCALE = 0.5
DEFAULT_TEXTURE_SIZE = 512


class InvalidInputs(ValueError):
    """Concept/word/letter triple violates the input contract."""


class InvalidScale(ValueError):
    """Scale outside (0, 1]."""


class UnknownSession(KeyError):
    """No session with that id."""


class NotYetGenerated(RuntimeError):
    """Session exists but has no composed image (failed generation)."""


class LayoutError(ValueError):
    """Plain layout hit a character the font cannot render."""


class ReshapeTimeout(RuntimeError):
    """Reshape service did not answer in time."""


class ReshapeRejected(RuntimeError):
    """Reshape service answered with a non-2xx status."""

    def __init__(self, status: int | None, body: str) -> None:
        super().__init__(f"reshape rejected request (status={status}): {body[:200]}")
        self.status = status
        self.body = body


@dataclass(frozen=True)
class SessionInputs:
    concept: str
    word: str
    letter: str

    def __post_init__(self) -> None:
        if not self.concept.strip():
            raise InvalidInputs("concept must be non-empty")
        if not self.word.strip():
            raise InvalidInputs("word must be non-empty")
        if len(self.letter) != 1:
            raise InvalidInputs("letter must be a single character")
        if self.letter.lower() not in self.word.lower():
            raise InvalidInputs(
                f"letter {self.letter!r} does not occur in word {self.word!r}"
            )


@dataclass(frozen=True)
class ReshapeClientConfig:
    mode: str = "plain"
    endpoint: str | None = None
    timeout: float = 120.0

    def __post_init__(self) -> None:
        if self.mode not in ("plain", "remote"):
            raise ValueError(f"unknown reshape mode {self.mode!r}")
        if self.mode == "remote" and not self.endpoint:
            raise ValueError("remote reshape requires an endpoint")


@dataclass
class Session:
    id: str
    inputs: SessionInputs
    scale: float
    background: BackgroundColor
    seed: int | None
    state: str  # "ready" | "failed"
    created_at: str
    updated_at: str
    width: int = 0
    height: int = 0
    error: str | None = None
    extra: dict = field(default_factory=dict)  # unknown JSON keys, preserved

    def to_json_dict(self) -> dict:
        doc = dict(self.extra)
        doc.update(
            {
                "id": self.id,
                "inputs": {
                    "concept": self.inputs.concept,
                    "word": self.inputs.word,
                    "letter": self.inputs.letter,
                },
                "scale": self.scale,
                "background": format_hex_color(self.background),
                "seed": self.seed,
                "state": self.state,
                "error": self.error,
                "canvas": {"width": self.width, "height": self.height},
                "created_at": self.created_at,
                "updated_at": self.updated_at,
            }
        )
        return doc

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Session":
        known = {
            "id",
            "inputs",
            "scale",
            "background",
            "seed",
            "state",
            "error",
            "canvas",
            "created_at",
            "updated_at",
        }
        from .compositor import parse_hex_color

        return cls(
            id=doc["id"],
            inputs=SessionInputs(**doc["inputs"]),
            scale=float(doc["scale"]),
            background=parse_hex_color(doc["background"]),
            seed=doc.get("seed"),
            state=doc.get("state", "ready"),
            error=doc.get("error"),
            width=int(doc.get("canvas", {}).get("width", 0)),
            height=int(doc.get("canvas", {}).get("height", 0)),
            created_at=doc["created_at"],
            updated_at=doc["updated_at"],
            extra={k: v for k, v in doc.items() if k not in known},
        )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class SessionStore:
    """One directory per session: session.json plus PNG assets."""

    def __init__(self, root: str) -> None:
        self.root = root
        os.makedirs(root, exist_ok=True)

    def _dir(self, session_id: str) -> str:
        if not session_id or "/" in session_id or session_id.startswith("."):
            raise UnknownSession(session_id)
        return os.path.join(self.root, session_id)

    def exists(self, session_id: str) -> bool:
        return os.path.isfile(os.path.join(self._dir(session_id), "session.json"))

    def new_id(self) -> str:
        return secrets.token_hex(16)

    def save_metadata(self, session: Session) -> None:
        path = os.path.join(self._dir(session.id), "session.json")
        os.makedirs(os.path.dirname(path), exist_ok=True)
        _atomic_write(path, json.dumps(session.to_json_dict(), indent=2).encode())

    def load_metadata(self, session_id: str) -> Session:
        path = os.path.join(self._dir(session_id), "session.json")
        try:
            with open(path, "rb") as fh:
                return Session.from_json_dict(json.loads(fh.read()))
        except FileNotFoundError:
            raise UnknownSession(session_id) from None

    def save_asset(self, session_id: str, name: str, data: bytes) -> None:
        directory = self._dir(session_id)
        os.makedirs(directory, exist_ok=True)
        _atomic_write(os.path.join(directory, name), data)

    def asset_path(self, session_id: str, name: str) -> str:
        return os.path.join(self._dir(session_id), name)

    def save_texture(self, session_id: str, texture: TextureImage) -> None:
        mode = "RGBA" if texture.channels == 4 else "RGB"
        self.save_asset(
            session_id, "texture.png", _png_bytes(texture.pixels, mode)
        )

    def load_texture(self, session_id: str) -> TextureImage:
        path = self.asset_path(session_id, "texture.png")
        with Image.open(path) as im:
            if "A" in im.getbands():
                arr = np.asarray(im.convert("RGBA"), dtype=np.uint8)
            else:
                arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
        return TextureImage(arr)

    def save_mask(self, session_id: str, mask8: np.ndarray) -> None:
        self.save_asset(session_id, "mask.png", _png_bytes(mask8, "L"))

    def load_mask(self, session_id: str) -> AlphaMask:
        path = self.asset_path(session_id, "mask.png")
        with Image.open(path) as im:
            arr = np.asarray(im.convert("L"), dtype=np.uint8)
        return AlphaMask(arr.astype(np.float64) / 255.0)

    def save_composed(self, session_id: str, image: ComposedImage) -> None:
        self.save_asset(session_id, "composed.png", encode_png(image))

    def load_composed_bytes(self, session_id: str) -> bytes:
        path = self.asset_path(session_id, "composed.png")
        try:
            with open(path, "rb") as fh:
                return fh.read()
        except FileNotFoundError:
            raise NotYetGenerated(session_id) from None

    def list_ids(self) -> list[str]:
        if not os.path.isdir(self.root):
            return []
        return sorted(
            d
            for d in os.listdir(self.root)
            if os.path.isfile(os.path.join(self.root, d, "session.json"))
        )


def _atomic_write(path: str, data: bytes) -> None:
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _png_bytes(arr: np.ndarray, mode: str) -> bytes:
    import io

    buf = io.BytesIO()
    Image.fromarray(arr, mode=mode).save(buf, format="PNG")
    return buf.getvalue()


def _flip_y(contours) -> list[Contour]:
    def flip_seg(seg: CubicSegment) -> CubicSegment:
        return CubicSegment(*(Point2(p.x, -p.y) for p in seg))

    return [Contour(flip_seg(s) for s in c.segments) for c in contours]


def reshape_text(
    inputs: SessionInputs, config: ReshapeClientConfig, font_bytes: bytes
) -> list[Contour]:
    """Contours for the whole word, in image orientation (y grows down).

    Remote mode asks the reshape service for an SVG of the word with the
    chosen letter deformed. Plain mode lays the word out left-to-right
    with the font's advance widths and no deformation, which keeps the
    pipeline fully usable offline.
    """
    if config.mode == "remote":
        return _reshape_remote(inputs, config)
    return _layout_plain(inputs.word, font_bytes)


def _reshape_remote(
    inputs: SessionInputs, config: ReshapeClientConfig
) -> list[Contour]:
    payload = {
        "concept": inputs.concept,
        "word": inputs.word,
        "letter": inputs.letter,
    }
    try:
        response = httpx.post(config.endpoint, json=payload, timeout=config.timeout)
    except httpx.TimeoutException as exc:
        raise ReshapeTimeout(
            f"no response within {config.timeout}s from {config.endpoint}"
        ) from exc
    except httpx.HTTPError as exc:
        raise ReshapeRejected(None, str(exc)) from exc
    if not (200 <= response.status_code < 300):
        raise ReshapeRejected(response.status_code, response.text)
    return list(load_svg_document(response.text).contours)


def _layout_plain(word: str, font_bytes: bytes) -> list[Contour]:
    """Advance-width layout in font units (no kerning), then y-flip."""
    face = load_face(font_bytes)
    upem = face.units_per_em
    contours: list[Contour] = []
    pen_x = 0.0
    for ch in word:
        if not face.has_glyph(ch):
            if ch.isspace():
                pen_x += upem / 4.0
                continue
            raise LayoutError(f"font has no glyph for {ch!r}")
        outline = face.outline(ch, float(upem))
        for contour in outline.contours:
            contours.append(contour.translated(pen_x, 0.0))
        pen_x += face.advance(ch, float(upem))
    return _flip_y(contours)


def fit_to_canvas(
    contours,
    long_side: int = DEFAULT_LONG_SIDE,
    margin: int = DEFAULT_MARGIN,
) -> tuple[list[Contour], int, int]:
    """Uniformly scale contours so the text bbox long side fills the canvas.

    Returns (fitted contours, width, height): the longest canvas side is
    `long_side`, with `margin` pixels of clearance around the bbox.
    """
    pts = [p for c in contours for p in c.control_points()]
    if not pts:
        return [], long_side, long_side
    minx = min(p.x for p in pts)
    miny = min(p.y for p in pts)
    maxx = max(p.x for p in pts)
    maxy = max(p.y for p in pts)
    bw = maxx - minx
    bh = maxy - miny
    longest = max(bw, bh)
    if longest <= 0:
        return [], long_side, long_side
    scale = (long_side - 2 * margin) / longest
    width = int(round(bw * scale)) + 2 * margin
    height = int(round(bh * scale)) + 2 * margin

    def fit_point(p: Point2) -> Point2:
        return Point2((p.x - minx) * scale + margin, (p.y - miny) * scale + margin)

    fitted = [
        Contour(
            CubicSegment(*(fit_point(p) for p in seg)) for seg in contour.segments
        )
        for contour in contours
    ]
    return fitted, width, height


class Pipeline:
    """Generate-and-adjust workflows over a session store.

    Per-session operations are serialized with a lock so a later adjust
    always observes the earlier one's state; the math modules underneath
    are pure, so concurrent sessions only share the provider client.
    """

    def __init__(
        self,
        store: SessionStore,
        provider: ProviderConfig,
        reshape: ReshapeClientConfig,
        font_bytes: bytes,
        default_scale: float = DEFAULT_SCALE,
        long_side: int = DEFAULT_LONG_SIDE,
        texture_size: int = DEFAULT_TEXTURE_SIZE,
    ) -> None:
        self.store = store
        self.provider = provider
        self.reshape = reshape
        self.font_bytes = font_bytes
        self.default_scale = default_scale
        self.long_side = long_side
        self.texture_size = texture_size
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def generate(
        self,
        inputs: SessionInputs,
        seed: int | None = None,
        scale: float | None = None,
        background: BackgroundColor = BackgroundColor(),
    ) -> Session:
        """Run the full flow and persist the resulting session.

        Provider or reshape failures persist the session in a "failed"
        state with the error recorded, then re-raise, so callers can show
        the failure and retry.
        """
        scale_value = self.default_scale if scale is None else ScaleFactor(scale).s
        session = Session(
            id=self.store.new_id(),
            inputs=inputs,
            scale=scale_value,
            background=background,
            seed=seed,
            state="ready",
            created_at=_now(),
            updated_at=_now(),
        )
        with self._lock(session.id):
            try:
                contours = reshape_text(inputs, self.reshape, self.font_bytes)
                fitted, width, height = fit_to_canvas(contours, self.long_side)
                coverage = rasterize(fitted, width, height)
                mask8 = np.floor(coverage.values * 255.0 + 0.5).astype(np.uint8)
                mask = AlphaMask(mask8.astype(np.float64) / 255.0)

                request = TextureRequest.create(
                    inputs.concept,
                    width=self.texture_size,
                    height=self.texture_size,
                    seed=seed,
                )
                texture = fetch_texture(request, self.provider)

                composed = _compose(texture, mask, scale_value, background)

                session.width = width
                session.height = height
                # Assets land before metadata: the JSON file is what marks
                # the session as existing.
                self.store.save_texture(session.id, texture)
                self.store.save_mask(session.id, mask8)
                self.store.save_composed(session.id, composed)
                self.store.save_metadata(session)
                return session
            except Exception as exc:
                session.state = "failed"
                session.error = f"{type(exc).__name__}: {exc}"
                session.updated_at = _now()
                self.store.save_metadata(session)
                raise

    def adjust(
        self,
        session_id: str,
        new_scale: float | None = None,
        new_background: BackgroundColor | None = None,
    ) -> ComposedImage:
        """Recompute scale -> tile -> composite from the cached assets.

        The mask and original texture are never touched, so adjustments
        are idempotent and freely reversible.
        """
        with self._lock(session_id):
            session = self.store.load_metadata(session_id)
            if session.state != "ready":
                raise NotYetGenerated(session_id)
            if new_scale is not None:
                try:
                    session.scale = ScaleFactor(float(new_scale)).s
                except ValueError as exc:
                    raise InvalidScale(str(exc)) from None
            if new_background is not None:
                session.background = new_background

            texture = self.store.load_texture(session_id)
            mask = self.store.load_mask(session_id)
            composed = _compose(texture, mask, session.scale, session.background)

            session.updated_at = _now()
            self.store.save_metadata(session)
            self.store.save_composed(session_id, composed)
            return composed

    def export_png(self, session_id: str) -> bytes:
        """Current composed image as PNG bytes."""
        with self._lock(session_id):
            if not self.store.exists(session_id):
                raise UnknownSession(session_id)
            return self.store.load_composed_bytes(session_id)

    def get_session(self, session_id: str) -> Session:
        return self.store.load_metadata(session_id)


def _compose(
    texture: TextureImage,
    mask: AlphaMask,
    scale: float,
    background: BackgroundColor,
) -> ComposedImage:
    """The fixed scale -> tile -> composite tail of the pipeline.

    Wrap boundary on the resample keeps the scaled texture periodic, so
    tiling it stays seamless.
    """
    scaled = resample(texture, scale, boundary="wrap")
    tiled = tile(scaled, mask.width, mask.height)
    return composite(mask, tiled, background)

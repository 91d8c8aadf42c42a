"""Command-line interface: generate, adjust, serve, plus debug dumps."""

from __future__ import annotations

import argparse
import sys

from .compositor import BackgroundColor, parse_hex_color
from .config import AppConfig, load_config
from .fonts import find_default_font, outline_from_font
from .geometry import contours_to_path_data
from .pipeline import Pipeline, ReshapeClientConfig, SessionInputs, SessionStore
from .provider import ProviderConfig
from .resample import kernel_table


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="textura",
        description="Texture a word's glyph mask with a concept-driven pattern.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="run the full pipeline and write a PNG")
    gen.add_argument("--concept", required=True)
    gen.add_argument("--word", required=True)
    gen.add_argument("--letter", required=True)
    gen.add_argument("--out", required=True, help="output PNG path")
    gen.add_argument(
        "--provider",
        choices=["procedural", "file", "remote"],
        default=None,
        help="texture source (default: procedural, or config file value)",
    )
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--scale", type=float, default=None)
    gen.add_argument("--background", default=None, help='hex color like "#RRGGBB"')
    gen.add_argument("--font", default=None, help="path to a TTF/OTF font")
    gen.add_argument("--sessions", default=None, help="session store directory")
    gen.add_argument("--texture-file", default=None, help="PNG for file provider")
    gen.add_argument("--endpoint", default=None, help="URL for remote provider")
    gen.add_argument("--config", default=None, help="INI config file")

    adj = sub.add_parser("adjust", help="re-scale / re-color an existing session")
    adj.add_argument("--session", required=True)
    adj.add_argument("--scale", type=float, default=None)
    adj.add_argument("--background", default=None)
    adj.add_argument("--sessions", default=None)
    adj.add_argument("--out", default=None, help="also write the adjusted PNG here")
    adj.add_argument("--config", default=None)

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--config", default=None, help="INI config file")
    srv.add_argument("--frontend", default=None, help="static frontend directory")

    ktab = sub.add_parser("kernel-table", help="dump resampling kernel weights as CSV")
    ktab.add_argument("--lobes", type=int, default=3)
    ktab.add_argument("--samples", type=int, default=64, help="samples per unit x")
    ktab.add_argument("--out", default="-", help="CSV path or - for stdout")

    out = sub.add_parser("outline", help="dump a glyph outline as SVG path data")
    out.add_argument("--font", required=True)
    out.add_argument("--char", required=True)
    out.add_argument("--size", type=float, default=256.0)

    return parser


def _app_config(args) -> AppConfig:
    config = load_config(args.config) if getattr(args, "config", None) else AppConfig()
    sessions = getattr(args, "sessions", None)
    if sessions:
        config = _replace(config, sessions_dir=sessions)
    return config


def _replace(config: AppConfig, **kw) -> AppConfig:
    from dataclasses import replace

    return replace(config, **kw)


def _resolve_font(path: str | None) -> bytes:
    font_path = path or find_default_font()
    if font_path is None:
        raise SystemExit("error: no font given and no system default found")
    with open(font_path, "rb") as fh:
        return fh.read()


def _make_pipeline(config: AppConfig, font_path: str | None) -> Pipeline:
    return Pipeline(
        store=SessionStore(config.sessions_dir),
        provider=config.provider,
        reshape=config.reshape,
        font_bytes=_resolve_font(font_path or config.font_path),
        default_scale=config.default_scale,
        long_side=config.raster_long_side,
        texture_size=config.texture_size,
    )


def _cmd_generate(args) -> int:
    config = _app_config(args)
    if args.provider:
        config = _replace(
            config,
            provider=ProviderConfig(
                mode=args.provider,
                endpoint=args.endpoint,
                file_path=args.texture_file,
                timeout=config.provider.timeout,
                auth_token_source=config.provider.auth_token_source,
            ),
        )
    pipeline = _make_pipeline(config, args.font)
    inputs = SessionInputs(concept=args.concept, word=args.word, letter=args.letter)
    background = (
        parse_hex_color(args.background) if args.background else BackgroundColor()
    )
    session = pipeline.generate(
        inputs, seed=args.seed, scale=args.scale, background=background
    )
    data = pipeline.export_png(session.id)
    with open(args.out, "wb") as fh:
        fh.write(data)
    print(f"session {session.id} -> {args.out}")
    return 0


def _cmd_adjust(args) -> int:
    config = _app_config(args)
    store = SessionStore(config.sessions_dir)
    # Adjust never re-fetches or re-rasterizes, so a dummy font is fine,
    # but the session store must be the real one.
    pipeline = Pipeline(
        store=store,
        provider=config.provider,
        reshape=config.reshape,
        font_bytes=b"",
        default_scale=config.default_scale,
    )
    background = parse_hex_color(args.background) if args.background else None
    pipeline.adjust(args.session, new_scale=args.scale, new_background=background)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(pipeline.export_png(args.session))
        print(f"session {args.session} -> {args.out}")
    else:
        print(f"session {args.session} adjusted")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config = load_config(args.config) if args.config else AppConfig()
    pipeline = _make_pipeline(config, None)
    app = create_app(pipeline, frontend_dir=args.frontend)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


def _cmd_kernel_table(args) -> int:
    rows = kernel_table(args.lobes, args.samples)
    lines = ["x,weight"] + [f"{x!r},{w!r}" for x, w in rows]
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def _cmd_outline(args) -> int:
    if len(args.char) != 1:
        raise SystemExit("error: --char wants exactly one character")
    with open(args.font, "rb") as fh:
        font_bytes = fh.read()
    outline = outline_from_font(font_bytes, args.char, args.size)
    print(contours_to_path_data(outline.contours))
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "adjust": _cmd_adjust,
    "serve": _cmd_serve,
    "kernel-table": _cmd_kernel_table,
    "outline": _cmd_outline,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SystemExit:
        raise
    except KeyboardInterrupt:
        return 130
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

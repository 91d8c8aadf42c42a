"""INI config file for the service and CLI.

Example:

    [server]
    listen = 127.0.0.1:8765
    sessions = ./sessions
    font = /usr/share/fonts/truetype/dejavu/DejaVuSans.ttf
    raster_long_side = 1024
    default_scale = 0.5
    texture_size = 512

    [texture_provider]
    mode = procedural          ; procedural | file | remote
    endpoint =
    timeout = 60
    file =
    auth_token_env = TEXTURA_PROVIDER_TOKEN

    [reshape]
    mode = plain               ; plain | remote
    endpoint =
    timeout = 120

The auth token itself never lives in the file: auth_token_env names the
environment variable that holds it.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass

from .pipeline import DEFAULT_LONG_SIDE, DEFAULT_SCALE, DEFAULT_TEXTURE_SIZE, ReshapeClientConfig
from .provider import ProviderConfig

__all__ = ["AppConfig", "load_config"]


@dataclass(frozen=True)
class AppConfig:
    host: str = "127.0.0.1"
    port: int = 8765
    sessions_dir: str = "./sessions"
    font_path: str | None = None
    raster_long_side: int = DEFAULT_LONG_SIDE
    default_scale: float = DEFAULT_SCALE
    texture_size: int = DEFAULT_TEXTURE_SIZE
    provider: ProviderConfig = ProviderConfig()
    reshape: ReshapeClientConfig = ReshapeClientConfig()


def load_config(path: str) -> AppConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    with open(path) as fh:
        parser.read_file(fh)

    server = parser["server"] if parser.has_section("server") else {}
    listen = server.get("listen", "127.0.0.1:8765")
    host, _, port = listen.rpartition(":")

    prov = parser["texture_provider"] if parser.has_section("texture_provider") else {}
    provider = ProviderConfig(
        mode=prov.get("mode", "procedural").strip(),
        endpoint=prov.get("endpoint", "").strip() or None,
        timeout=float(prov.get("timeout", "60")),
        file_path=prov.get("file", "").strip() or None,
        auth_token_source=prov.get("auth_token_env", "TEXTURA_PROVIDER_TOKEN").strip(),
    )

    resh = parser["reshape"] if parser.has_section("reshape") else {}
    reshape = ReshapeClientConfig(
        mode=resh.get("mode", "plain").strip(),
        endpoint=resh.get("endpoint", "").strip() or None,
        timeout=float(resh.get("timeout", "120")),
    )

    return AppConfig(
        host=host or "127.0.0.1",
        port=int(port),
        sessions_dir=server.get("sessions", "./sessions"),
        font_path=server.get("font", "").strip() or None,
        raster_long_side=int(server.get("raster_long_side", str(DEFAULT_LONG_SIDE))),
        default_scale=float(server.get("default_scale", str(DEFAULT_SCALE))),
        texture_size=int(server.get("texture_size", str(DEFAULT_TEXTURE_SIZE))),
        provider=provider,
        reshape=reshape,
    )

"""Runtime configuration.

A flat JSON file plus INNERSELF_* environment overrides. JSON was
chosen over TOML because the supported interpreter baseline (3.10) has
no stdlib TOML parser and the config is small enough not to care.

Adapter fields take either the literal string "reference" (in-process
deterministic implementation) or the base URL of an external inference
service.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from innerself.storage import DEFAULT_ALPHA

REFERENCE = "reference"
ADAPTER_FIELDS = (
    "stt",
    "audio_features",
    "llm",
    "encoder",
    "synthesizer",
    "vocoder",
)
ENV_PREFIX = "INNERSELF_"


@dataclass
class ServiceConfig:
    data_dir: str = "innerself-data"
    alpha: int = DEFAULT_ALPHA
    host: str = "127.0.0.1"
    port: int = 8470
    default_user_name: str = "Friend"
    stt: str = REFERENCE
    audio_features: str = REFERENCE
    llm: str = REFERENCE
    encoder: str = REFERENCE
    synthesizer: str = REFERENCE
    vocoder: str = REFERENCE
    head_path: str | None = None
    webapp_dir: str | None = "frontend/dist"

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be a positive character count")
        if not (1 <= int(self.port) <= 65535):
            raise ValueError(f"port {self.port} out of range")
        for name in ADAPTER_FIELDS:
            value = getattr(self, name)
            if value != REFERENCE and not str(value).startswith(("http://", "https://")):
                raise ValueError(
                    f"adapter {name!r} must be {REFERENCE!r} or an http(s) URL,"
                    f" got {value!r}"
                )

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(ServiceConfig)}


def _coerce(name: str, raw: str):
    if name in ("alpha", "port"):
        return int(raw)
    return raw


def load_config(
    path: str | Path | None = None,
    env: Mapping[str, str] = os.environ,
) -> ServiceConfig:
    """Build a ServiceConfig from defaults, a JSON file, and environment.

    Precedence, lowest to highest: dataclass defaults, JSON keys,
    INNERSELF_* variables. Unknown JSON keys are rejected so typos fail
    loudly instead of silently running with defaults.
    """
    values: dict = {}
    if path is not None:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(document, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = set(document) - set(_FIELD_TYPES)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(document)
    for name in _FIELD_TYPES:
        raw = env.get(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = _coerce(name, raw)
    return ServiceConfig(**values)

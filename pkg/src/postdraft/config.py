"""Service and gateway configuration.

Loaded from a JSON file with environment-variable overrides; the API
credential is environment-only (POSTDRAFT_API_KEY) and never appears in
the file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .gateway import (
    DEFAULT_RETRIES,
    DEFAULT_TIMEOUT,
    CompletionGateway,
    DeterministicProvider,
    HttpProvider,
)

ENV_API_KEY = "POSTDRAFT_API_KEY"
ENV_ENDPOINT = "POSTDRAFT_ENDPOINT"
ENV_STORAGE_DIR = "POSTDRAFT_STORAGE_DIR"


@dataclass
class ServiceConfig:
    port: int = 8000
    storage_dir: str = "workspaces"
    endpoint: str = ""
    model_map: dict = field(default_factory=lambda: {"default": "gpt-4"})
    retries: int = DEFAULT_RETRIES
    timeout: float = DEFAULT_TIMEOUT
    mock: bool = False


def load_config(path: str | Path | None = None, mock: bool | None = None) -> ServiceConfig:
    cfg = ServiceConfig()
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        for key in ("port", "storage_dir", "endpoint", "model_map", "retries", "timeout", "mock"):
            if key in data:
                setattr(cfg, key, data[key])
    if os.environ.get(ENV_ENDPOINT):
        cfg.endpoint = os.environ[ENV_ENDPOINT]
    if os.environ.get(ENV_STORAGE_DIR):
        cfg.storage_dir = os.environ[ENV_STORAGE_DIR]
    if mock is not None:
        cfg.mock = mock
    return cfg


def build_gateway(cfg: ServiceConfig, sleep=None) -> CompletionGateway:
    """Assemble the completion gateway the configuration describes."""
    if cfg.mock:
        provider = DeterministicProvider()
        return CompletionGateway(provider, retries=cfg.retries, sleep=sleep or (lambda s: None))
    api_key = os.environ.get(ENV_API_KEY, "")
    provider = HttpProvider(
        endpoint=cfg.endpoint,
        api_key=api_key,
        model_map=cfg.model_map,
        timeout=cfg.timeout,
    )
    import time

    return CompletionGateway(provider, retries=cfg.retries, sleep=sleep or time.sleep)

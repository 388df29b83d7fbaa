from .config import (
    Config,
    RunConfig,
    apply_env_overrides,
    parse_config,
    serialize_config,
)

__all__ = [
    "Config",
    "RunConfig",
    "apply_env_overrides",
    "parse_config",
    "serialize_config",
]

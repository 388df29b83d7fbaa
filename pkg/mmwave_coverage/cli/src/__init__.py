from .constants import (
    ENV_NESTING_SEPARATOR,
    ENV_PREFIX,
    EnvVars,
    ExitCode,
    GainSourceMode,
    GxSource,
    LocalPaths,
    MuOSource,
    ReproduceTarget,
    Verb,
)
from .logger import enable_file_logs, logger

__all__ = [
    "ENV_NESTING_SEPARATOR",
    "ENV_PREFIX",
    "EnvVars",
    "ExitCode",
    "GainSourceMode",
    "GxSource",
    "LocalPaths",
    "MuOSource",
    "ReproduceTarget",
    "Verb",
    "enable_file_logs",
    "logger",
]

"""Shared utilities and constants for mmwave-coverage modules."""

from .base_models import BaseModelWithDefaults
from .constants import (
    ENV_NESTING_SEPARATOR,
    ENV_PREFIX,
    AutoNamedEnum,
    CoverageMethod,
    EnvVars,
    ExitCode,
    Family,
    GainKind,
    LinkState,
    LocalPaths,
)
from .errors import (
    ConfigParseError,
    ConfigValidationError,
    ConvergenceError,
    EmptySamplesError,
    InvalidArgumentError,
    InvalidConfigurationError,
    MmwaveError,
    NonFiniteSampleError,
    OutputError,
    TooFewSamplesError,
)
from .logger import LoggerConfig, create_logger, file_logs_disabled, get_log_level
from .params import DEFAULT_CLUSTER_LAW, ClusterLaw, SystemParams
from .reports import exit_code_for, format_error_report
from .rng import chunk_sizes, make_rng, spawn_rngs

__all__ = [
    # Base models
    "BaseModelWithDefaults",
    # Constants
    "ENV_NESTING_SEPARATOR",
    "ENV_PREFIX",
    "AutoNamedEnum",
    "CoverageMethod",
    "EnvVars",
    "ExitCode",
    "Family",
    "GainKind",
    "LinkState",
    "LocalPaths",
    # Errors
    "ConfigParseError",
    "ConfigValidationError",
    "ConvergenceError",
    "EmptySamplesError",
    "InvalidArgumentError",
    "InvalidConfigurationError",
    "MmwaveError",
    "NonFiniteSampleError",
    "OutputError",
    "TooFewSamplesError",
    # Logger
    "LoggerConfig",
    "create_logger",
    "file_logs_disabled",
    "get_log_level",
    # Parameters
    "DEFAULT_CLUSTER_LAW",
    "ClusterLaw",
    "SystemParams",
    # Reports
    "exit_code_for",
    "format_error_report",
    # Randomness
    "chunk_sizes",
    "make_rng",
    "spawn_rngs",
]

"""Constants for the command-line application.

Re-exports common constants from the shared module and defines CLI-specific ones.
"""

from enum import auto

from mmwave_coverage.shared import (
    ENV_NESTING_SEPARATOR,
    ENV_PREFIX,
    AutoNamedEnum,
    EnvVars,
    ExitCode,
    LocalPaths,
)

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
]


class Verb(AutoNamedEnum):
    GAINS = auto()
    FIT = auto()
    COVERAGE = auto()
    SIMULATE = auto()
    COMPARE = auto()
    REPRODUCE = auto()


class ReproduceTarget(AutoNamedEnum):
    FIG2 = auto()
    FIG3 = auto()
    FIG4 = auto()
    FIG5 = auto()
    FIG6 = auto()


class GxSource(AutoNamedEnum):
    """Where the misaligned-gain law of a coverage run comes from."""

    FITTED = auto()
    PUBLISHED = auto()
    EXPLICIT = auto()


class MuOSource(AutoNamedEnum):
    """Where the aligned-gain rate comes from."""

    POWER_LAW = auto()
    FITTED = auto()
    EXPLICIT = auto()


class GainSourceMode(AutoNamedEnum):
    """How the network simulator draws beamforming gains."""

    FITTED = auto()
    FULL_CHANNEL = auto()

"""Shared constants, enums, and configuration values for mmwave-coverage."""

import os
from enum import Enum, IntEnum, auto

# Prefix and nesting separator of environment overrides for config keys,
# e.g. ``MMWAVE__SYSTEM__N_TX=64``.
ENV_PREFIX: str = "MMWAVE__"
ENV_NESTING_SEPARATOR: str = "__"


class AutoNamedEnum(str, Enum):
    """Enum that uses lowercase member names as values."""

    @staticmethod
    def _generate_next_value_(
        name: str, start: int, count: int, last_values: list[str]
    ) -> str:
        return name.lower()


class EnvVars(str, Enum):
    """Environment variable names read by the package."""

    LOG_LEVEL = "LOG_LEVEL"
    MMWAVE_NO_FILE_LOGS = "MMWAVE_NO_FILE_LOGS"

    @property
    def env_value(self) -> str | None:
        """Get the environment variable value.

        Named env_value to avoid conflict with Enum's built-in value attribute.
        """
        return os.getenv(self.name)


class LinkState(AutoNamedEnum):
    """Propagation state of a BS-to-UE link."""

    LOS = auto()
    NLOS = auto()

    @property
    def opposite(self) -> "LinkState":
        return LinkState.NLOS if self is LinkState.LOS else LinkState.LOS


class GainKind(AutoNamedEnum):
    """Which beamforming gain a sample set holds."""

    ALIGNED = auto()
    MISALIGNED = auto()


class Family(AutoNamedEnum):
    """Parametric distribution families used for gain fitting."""

    EXPONENTIAL = auto()
    LOGLOGISTIC = auto()
    BURR = auto()
    LOGNORMAL = auto()
    NAKAGAMI = auto()


class CoverageMethod(AutoNamedEnum):
    """How a coverage curve was computed."""

    ANALYTIC = auto()
    MONTECARLO = auto()


class ExitCode(IntEnum):
    """Process exit codes of the command-line interface."""

    SUCCESS = 0
    UNEXPECTED = 1
    VALIDATION = 2
    CONVERGENCE = 3
    IO = 4


class LocalPaths(str, Enum):
    """Local file and directory names."""

    CONFIG_FILE = "config.yaml"
    LOGS_DIR = "logs"
    LOGS_FILE = "logs.txt"
    OUTPUTS_DIR = "outputs"
    PUBLISHED_FITS_FILE = "published_fits.json"

"""Exception hierarchy shared by all mmwave-coverage modules.

Every error carries the exit code the CLI maps it to, so command handlers can
let library errors propagate and translate them in one place.
"""

from __future__ import annotations

from typing import Any

from .constants import ExitCode


class MmwaveError(Exception):
    """Base class for all package errors."""

    exit_code: ExitCode = ExitCode.UNEXPECTED

    @property
    def details(self) -> dict[str, Any]:
        return {}


class InvalidArgumentError(MmwaveError, ValueError):
    """An operation received an argument outside its domain."""

    exit_code = ExitCode.VALIDATION


class EmptySamplesError(InvalidArgumentError):
    pass


class TooFewSamplesError(InvalidArgumentError):
    def __init__(self, n_samples: int, minimum: int) -> None:
        super().__init__(f"need at least {minimum} samples, got {n_samples}")
        self.n_samples = n_samples
        self.minimum = minimum

    @property
    def details(self) -> dict[str, Any]:
        return {"n_samples": self.n_samples, "minimum": self.minimum}


class NonFiniteSampleError(InvalidArgumentError):
    pass


class InvalidConfigurationError(MmwaveError, ValueError):
    """A combination of otherwise valid inputs cannot be evaluated."""

    exit_code = ExitCode.VALIDATION


class ConvergenceError(MmwaveError):
    """An iterative solver did not reach its tolerance."""

    exit_code = ExitCode.CONVERGENCE

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}

    @property
    def details(self) -> dict[str, Any]:
        return dict(self.diagnostics)


class ConfigParseError(MmwaveError, ValueError):
    """The configuration document is not well-formed."""

    exit_code = ExitCode.VALIDATION

    def __init__(self, message: str, line: int | None = None) -> None:
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line

    @property
    def details(self) -> dict[str, Any]:
        return {"line": self.line}


class ConfigValidationError(MmwaveError, ValueError):
    """The configuration document violates a field constraint."""

    exit_code = ExitCode.VALIDATION

    def __init__(self, message: str, field: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field

    @property
    def details(self) -> dict[str, Any]:
        return {"field": self.field}


class OutputError(MmwaveError, OSError):
    """Reading or writing an artifact failed."""

    exit_code = ExitCode.IO

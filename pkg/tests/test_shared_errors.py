"""Tests for the error hierarchy and the CLI error report.

Every error carries its exit code; ``format_error_report`` renders the single
JSON object the CLI prints on failure.
"""

import json
from datetime import datetime, timezone

UTC = timezone.utc

import pytest

from mmwave_coverage.shared import (
    ConfigParseError,
    ConfigValidationError,
    ConvergenceError,
    EmptySamplesError,
    ExitCode,
    InvalidArgumentError,
    InvalidConfigurationError,
    MmwaveError,
    NonFiniteSampleError,
    OutputError,
    TooFewSamplesError,
    exit_code_for,
    format_error_report,
)


@pytest.mark.unit
class TestHierarchy:
    @pytest.mark.parametrize(
        "error_cls",
        [EmptySamplesError, NonFiniteSampleError],
    )
    def test_sample_errors_are_invalid_arguments(
        self, error_cls: type[MmwaveError]
    ) -> None:
        error = error_cls("bad")
        assert isinstance(error, InvalidArgumentError)
        assert isinstance(error, ValueError)

    def test_too_few_samples_details(self) -> None:
        error = TooFewSamplesError(10, 100)
        assert isinstance(error, InvalidArgumentError)
        assert error.details == {"n_samples": 10, "minimum": 100}
        assert "100" in str(error)

    def test_convergence_carries_diagnostics(self) -> None:
        error = ConvergenceError("no", diagnostics={"family": "burr"})
        assert error.details == {"family": "burr"}
        assert error.exit_code is ExitCode.CONVERGENCE

    def test_config_parse_error_line(self) -> None:
        error = ConfigParseError("unexpected token", line=3)
        assert error.line == 3
        assert str(error).startswith("line 3: ")

    def test_config_validation_error_names_field(self) -> None:
        error = ConfigValidationError("must be >= 1", "system.n_tx")
        assert error.field == "system.n_tx"
        assert "system.n_tx" in str(error)

    def test_output_error_is_os_error(self) -> None:
        assert isinstance(OutputError("disk"), OSError)


@pytest.mark.unit
class TestExitCodeFor:
    @pytest.mark.parametrize(
        ("error", "code"),
        [
            (InvalidArgumentError("x"), ExitCode.VALIDATION),
            (InvalidConfigurationError("x"), ExitCode.VALIDATION),
            (ConfigParseError("x"), ExitCode.VALIDATION),
            (ConvergenceError("x"), ExitCode.CONVERGENCE),
            (OutputError("x"), ExitCode.IO),
            (PermissionError("x"), ExitCode.IO),
            (ValueError("x"), ExitCode.VALIDATION),
            (RuntimeError("x"), ExitCode.UNEXPECTED),
            (MmwaveError("x"), ExitCode.UNEXPECTED),
        ],
    )
    def test_mapping(self, error: BaseException, code: ExitCode) -> None:
        assert exit_code_for(error) is code


@pytest.mark.unit
class TestFormatErrorReport:
    def test_report_fields(self) -> None:
        ts = datetime(2026, 1, 2, 3, 4, 5, tzinfo=UTC)
        report = json.loads(
            format_error_report(
                command="fit",
                error=ConvergenceError("stuck", {"gtol": 1e-8}),
                timestamp=ts,
            )
        )
        assert report == {
            "command": "fit",
            "status": "FAILED",
            "error": "ConvergenceError",
            "message": "stuck",
            "exit_code": 3,
            "details": {"gtol": 1e-8},
            "timestamp": "2026-01-02 03:04:05 UTC",
        }

    def test_foreign_error_has_empty_details(self) -> None:
        report = json.loads(format_error_report(command="gains", error=KeyError("k")))
        assert report["details"] == {}
        assert report["exit_code"] == 1

    def test_single_line(self) -> None:
        text = format_error_report(command="x", error=ValueError("a\nb"))
        assert "\n" not in text

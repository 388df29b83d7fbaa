"""Machine-readable failure reports written by the CLI.

Every failed command prints exactly one JSON object to stderr:

    {"command": "fit", "status": "FAILED", "error": "ConvergenceError",
     "message": "...", "exit_code": 3, "details": {...},
     "timestamp": "2026-06-10 04:12:00 UTC"}

Success is not reported this way; the output files are the result.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone

UTC = timezone.utc
from typing import Any

from .constants import ExitCode
from .errors import MmwaveError


def exit_code_for(error: BaseException) -> ExitCode:
    """Map an exception to the CLI exit code."""
    if isinstance(error, MmwaveError):
        return error.exit_code
    if isinstance(error, OSError):
        return ExitCode.IO
    if isinstance(error, ValueError):
        return ExitCode.VALIDATION
    return ExitCode.UNEXPECTED


def format_error_report(
    *,
    command: str,
    error: BaseException,
    timestamp: datetime | None = None,
) -> str:
    """Build the single-line JSON error report for ``error`` raised by ``command``."""
    ts = (timestamp or datetime.now(UTC)).strftime("%Y-%m-%d %H:%M:%S")
    details: dict[str, Any] = (
        error.details if isinstance(error, MmwaveError) else {}
    )
    report = {
        "command": command,
        "status": "FAILED",
        "error": type(error).__name__,
        "message": str(error),
        "exit_code": int(exit_code_for(error)),
        "details": details,
        "timestamp": f"{ts} UTC",
    }
    return json.dumps(report, default=str, sort_keys=False)

"""Thin shim delegating to ``mmwave_coverage.shared.logger``."""

import logging
from pathlib import Path

from mmwave_coverage.shared.logger import (
    LoggerConfig,
    create_logger,
    get_log_level,
)

from .constants import LocalPaths

__all__ = [
    "CLI_LOG_FORMAT",
    "LoggerConfig",
    "create_logger",
    "default_logger_config",
    "enable_file_logs",
    "get_log_level",
    "logger",
]

CLI_LOG_FORMAT: str = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"

default_logger_config = LoggerConfig(
    name="mmwave_coverage.cli",
    level=get_log_level(),
    log_format=CLI_LOG_FORMAT,
)
logger = create_logger(default_logger_config)


def enable_file_logs(output_dir: Path) -> logging.Logger:
    """Also write logs under ``<output_dir>/logs`` for the rest of the run."""
    return create_logger(
        LoggerConfig(
            name=default_logger_config.name,
            level=default_logger_config.level,
            log_format=CLI_LOG_FORMAT,
            logs_dir_path=Path(output_dir) / LocalPaths.LOGS_DIR.value,
        )
    )

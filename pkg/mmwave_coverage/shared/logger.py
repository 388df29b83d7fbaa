"""Shared logging configuration for mmwave-coverage modules.

Library modules log through ``logging.getLogger(__name__)``; the handlers live on
the ``mmwave_coverage`` parent logger, so every module shares one stdout stream
and, for CLI runs, one dated log file.
"""

import logging
import os
import sys
from collections.abc import Callable
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from .constants import EnvVars

DEFAULT_LOG_FORMAT: str = "%(asctime)s - %(levelname)s - %(message)s"
LOG_FILE_STEM: str = "logs"

_SHARED_ROOT: str = "mmwave_coverage"


class _FlushingStreamHandler(logging.StreamHandler):
    """StreamHandler that flushes after every record.

    Long simulations are often piped through ``tee`` or a job scheduler; a
    buffered handler would hold progress lines until exit.
    """

    def emit(self, record: logging.LogRecord) -> None:
        super().emit(record)
        self.flush()


@dataclass
class LoggerConfig:
    name: str = __name__
    level: int = logging.INFO
    log_format: str = DEFAULT_LOG_FORMAT
    logs_dir_path: Path | None = None


def file_logs_disabled() -> bool:
    return bool(EnvVars.MMWAVE_NO_FILE_LOGS.env_value)


def _in_shared_tree(name: str) -> bool:
    return name == _SHARED_ROOT or name.startswith(_SHARED_ROOT + ".")


def create_logger(config: LoggerConfig) -> logging.Logger:
    """Configure ``config.name`` and return it.

    Names under ``mmwave_coverage`` share the parent's handlers through
    propagation, so a leaf never carries a duplicate. Any other name owns its
    handlers and does not propagate to the root. Repeated calls are no-ops for
    handlers already attached.
    """
    in_tree = _in_shared_tree(config.name)
    owner = logging.getLogger(_SHARED_ROOT if in_tree else config.name)
    owner.setLevel(config.level)
    formatter = logging.Formatter(config.log_format)

    # stdout carries logs; stderr is reserved for the JSON error report.
    _attach(owner, formatter, _is_console, lambda: _FlushingStreamHandler(sys.stdout))
    if config.logs_dir_path is not None and not file_logs_disabled():
        log_path = config.logs_dir_path / log_filename()
        config.logs_dir_path.mkdir(parents=True, exist_ok=True)
        _attach(
            owner,
            formatter,
            lambda h: isinstance(h, logging.FileHandler)
            and h.baseFilename == os.path.abspath(log_path),
            lambda: logging.FileHandler(log_path),
        )

    logger = logging.getLogger(config.name)
    logger.setLevel(config.level)
    logger.propagate = in_tree
    return logger


def _is_console(handler: logging.Handler) -> bool:
    return isinstance(handler, logging.StreamHandler) and not isinstance(
        handler, logging.FileHandler
    )


def _attach(
    logger: logging.Logger,
    formatter: logging.Formatter,
    present: Callable[[logging.Handler], bool],
    make: Callable[[], logging.Handler],
) -> None:
    if any(present(h) for h in logger.handlers):
        return
    handler = make()
    handler.setFormatter(formatter)
    logger.addHandler(handler)


def log_filename(day: date | None = None) -> str:
    """``logs_<YYYY-MM-DD>.txt`` for ``day`` (today by default)."""
    return f"{LOG_FILE_STEM}_{(day or date.today()).isoformat()}.txt"


def get_log_level() -> int:
    """Level named by ``LOG_LEVEL``; unknown names fall back to INFO."""
    name = os.getenv(EnvVars.LOG_LEVEL.value, "INFO").strip().upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.INFO

"""Output naming and table/JSON emission for CLI commands."""

import json
from pathlib import Path
from typing import Any

import pandas as pd

from mmwave_coverage.shared import OutputError

from .logger import logger

TABLE_FLOAT_FORMAT: str = "%.12g"


def config_tag(n_tx: int, n_rx: int) -> str:
    return f"{n_tx}x{n_rx}"


def output_path(output_dir: Path, *parts: str, suffix: str) -> Path:
    """``<output_dir>/<part1>_<part2>...<suffix>``."""
    return Path(output_dir) / ("_".join(p for p in parts if p) + suffix)


def ensure_output_dir(output_dir: Path) -> Path:
    try:
        Path(output_dir).mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f"Cannot create output directory {output_dir}: {e}") from e
    return Path(output_dir)


def write_table(frame: pd.DataFrame, path: Path) -> Path:
    """Write a plot-ready CSV with a fixed float format and ``\\n`` line ends."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(
            path, index=False, float_format=TABLE_FLOAT_FORMAT, lineterminator="\n"
        )
    except OSError as e:
        raise OutputError(f"Failed to write table to {path}: {e}") from e
    logger.info("Wrote %d rows to %s", len(frame), path)
    return path


def read_table(path: Path) -> pd.DataFrame:
    try:
        return pd.read_csv(path, keep_default_na=False)
    except OSError as e:
        raise OutputError(f"Failed to read table from {path}: {e}") from e


def write_json(payload: dict[str, Any], path: Path) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise OutputError(f"Failed to write {path}: {e}") from e
    logger.info("Wrote %s", path)
    return path

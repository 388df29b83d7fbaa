"""Coverage curves: result type, CSV form, analytic-vs-simulated join."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from mmwave_coverage.shared import (
    CoverageMethod,
    Family,
    InvalidArgumentError,
    OutputError,
    SystemParams,
)

logger = logging.getLogger(__name__)

# Allowed upward step between consecutive coverage values.
MONOTONE_TOL: float = 1e-9
CSV_FLOAT_FORMAT: str = "%.12g"


def db_to_linear(t_db: float) -> float:
    return float(10.0 ** (t_db / 10.0))


@dataclass(frozen=True)
class CoverageCurve:
    """Coverage probability against SIR threshold (in dB)."""

    thresholds_db: list[float]
    coverages: list[float]
    method: CoverageMethod
    gx_family: Family | None = None
    params_snapshot: SystemParams | None = None
    stderr: list[float] | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.thresholds_db) != len(self.coverages):
            raise InvalidArgumentError("thresholds and coverages differ in length")
        if self.stderr is not None and len(self.stderr) != len(self.coverages):
            raise InvalidArgumentError("stderr must have one entry per threshold")
        cov = np.asarray(self.coverages, dtype=float)
        if np.any((cov < 0) | (cov > 1)) or np.any(np.isnan(cov)):
            raise InvalidArgumentError("coverage values must lie in [0, 1]")
        order = np.argsort(self.thresholds_db, kind="stable")
        if np.any(np.diff(cov[order]) > MONOTONE_TOL):
            raise InvalidArgumentError("coverage must be nonincreasing in T")

    def __len__(self) -> int:
        return len(self.coverages)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(
            {
                "T_dB": self.thresholds_db,
                "coverage": self.coverages,
                "method": self.method.value,
                "gx_family": self.gx_family.value if self.gx_family else "",
            }
        )
        if self.stderr is not None:
            frame["stderr"] = self.stderr
        return frame


def write_curve_csv(curve: CoverageCurve, path: str | Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        curve.to_frame().to_csv(
            path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n"
        )
    except OSError as e:
        raise OutputError(f"Failed to write coverage curve to {path}: {e}") from e
    logger.info(
        "Wrote %s curve with %d points to %s", curve.method.value, len(curve), path
    )
    return path


def read_curve_csv(path: str | Path) -> CoverageCurve:
    """Read a curve written by :func:`write_curve_csv` (no parameter snapshot)."""
    path = Path(path)
    try:
        frame = pd.read_csv(path, keep_default_na=False)
    except OSError as e:
        raise OutputError(f"Failed to read coverage curve from {path}: {e}") from e
    try:
        methods = set(frame["method"])
        if len(methods) != 1:
            raise InvalidArgumentError(f"{path}: mixed methods {sorted(methods)}")
        family = str(frame["gx_family"].iloc[0]) if len(frame) else ""
        return CoverageCurve(
            thresholds_db=frame["T_dB"].astype(float).tolist(),
            coverages=frame["coverage"].astype(float).tolist(),
            method=CoverageMethod(methods.pop()),
            gx_family=Family(family) if family else None,
            stderr=frame["stderr"].astype(float).tolist()
            if "stderr" in frame
            else None,
        )
    except KeyError as e:
        raise InvalidArgumentError(f"{path}: missing column {e}") from e


def compare_curves(analytic: CoverageCurve, simulated: CoverageCurve) -> pd.DataFrame:
    """Join two curves on threshold with the per-point difference.

    Columns: ``T_dB, analytic, montecarlo, stderr, delta`` where
    ``delta = montecarlo - analytic``.
    """
    left = pd.DataFrame(
        {"T_dB": analytic.thresholds_db, "analytic": analytic.coverages}
    )
    right = pd.DataFrame(
        {
            "T_dB": simulated.thresholds_db,
            "montecarlo": simulated.coverages,
            "stderr": simulated.stderr
            if simulated.stderr is not None
            else [float("nan")] * len(simulated),
        }
    )
    joined = left.merge(right, on="T_dB", how="inner", validate="one_to_one")
    if joined.empty:
        raise InvalidArgumentError("curves share no thresholds")
    joined["delta"] = joined["montecarlo"] - joined["analytic"]
    logger.info(
        "Max |analytic - montecarlo| over %d points: %.4f",
        len(joined),
        float(joined["delta"].abs().max()),
    )
    return joined.sort_values("T_dB", ignore_index=True)

"""Published gain fits bundled with the package.

The data file holds the log-logistic ``(a, b)`` grid of misaligned-gain fits
for ``n_tx, n_rx in {4, 16, 64, 256}``, the four competing misaligned-gain fits
at 256x64, and the aligned-rate power law. Every misaligned fit is capped at
``n_tx * n_rx``.
"""

from __future__ import annotations

import json
from functools import cache
from pathlib import Path
from typing import Any

from mmwave_coverage.shared import Family, InvalidConfigurationError, LocalPaths

from .dist_fit import SurfaceFit
from .distributions import FittedDist

DATA_FILE: Path = Path(__file__).parent / "data" / LocalPaths.PUBLISHED_FITS_FILE.value
# Antenna configuration of the family-comparison fits.
FAMILY_FITS_CONFIG: tuple[int, int] = (256, 64)


@cache
def _load() -> dict[str, Any]:
    with open(DATA_FILE, encoding="utf-8") as file:
        data: dict[str, Any] = json.load(file)
    return data


def available_configurations() -> list[tuple[int, int]]:
    """``(n_tx, n_rx)`` pairs with a bundled log-logistic fit."""
    return [(row["n_tx"], row["n_rx"]) for row in _load()["loglogistic"]]


def published_loglogistic(n_tx: int, n_rx: int) -> FittedDist:
    for row in _load()["loglogistic"]:
        if (row["n_tx"], row["n_rx"]) == (n_tx, n_rx):
            return FittedDist(
                Family.LOGLOGISTIC,
                {"a": row["a"], "b": row["b"]},
                truncation_cap=float(n_tx * n_rx),
            )
    raise InvalidConfigurationError(
        f"no bundled log-logistic fit for {n_tx}x{n_rx}; "
        f"available: {available_configurations()}"
    )


def published_fit(family: Family, n_tx: int = 256, n_rx: int = 64) -> FittedDist:
    """Bundled misaligned-gain fit of ``family`` at ``n_tx x n_rx``.

    Only the log-logistic family has a full antenna grid; the other families
    exist for 256x64 only.
    """
    family = Family(family)
    if family is Family.LOGLOGISTIC:
        return published_loglogistic(n_tx, n_rx)
    if (n_tx, n_rx) == FAMILY_FITS_CONFIG:
        for entry in _load()["misaligned_256x64"]:
            if entry["family"] == family.value:
                return FittedDist.from_dict(entry)
    raise InvalidConfigurationError(
        f"no bundled {family.value} fit for {n_tx}x{n_rx}"
    )


def published_surface() -> SurfaceFit:
    law = _load()["aligned_rate_law"]
    return SurfaceFit(coeff=float(law["coeff"]), expo=float(law["expo"]))

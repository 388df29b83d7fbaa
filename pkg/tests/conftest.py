"""Shared pytest fixtures for mmwave-coverage tests.

Fixtures keep tests hermetic: no file logs, no ``MMWAVE__`` overrides leaking in
from the developer's shell, and seeded generators everywhere.
"""

from __future__ import annotations

import os
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from mmwave_coverage.fitting import FittedDist, published_loglogistic
from mmwave_coverage.shared import ENV_PREFIX, SystemParams, make_rng


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Disable file logging and drop any ``MMWAVE__*`` overrides."""
    monkeypatch.setenv("MMWAVE_NO_FILE_LOGS", "1")
    for name in list(os.environ):
        if name.startswith(ENV_PREFIX):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture
def params() -> SystemParams:
    """28 GHz defaults at 256x64."""
    return SystemParams()


@pytest.fixture
def small_params() -> SystemParams:
    return SystemParams(n_tx=4, n_rx=4)


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng(1234)


@pytest.fixture
def loglogistic_256x64() -> FittedDist:
    return published_loglogistic(256, 64)


@pytest.fixture
def make_config_data(tmp_path: Path) -> Callable[..., dict[str, Any]]:
    """Build a small, fast run-configuration document writing under ``tmp_path``."""

    def build(**sections: Any) -> dict[str, Any]:
        data: dict[str, Any] = {
            "system": {"n_tx": 16, "n_rx": 4, "rng_seed": 7},
            "sampling": {"kind": "misaligned", "n_samples": 2000},
            "fitting": {"families": ["loglogistic", "lognormal"], "restarts": 2},
            "coverage": {"t_grid_db": [-10, 0, 10], "n_fit_samples": 2000},
            "simulation": {"n_drops": 200, "region_radius": 600.0},
            "output_dir": str(tmp_path / "out"),
        }
        for key, value in sections.items():
            if isinstance(value, dict) and isinstance(data.get(key), dict):
                data[key] = {**data[key], **value}
            else:
                data[key] = value
        return data

    return build

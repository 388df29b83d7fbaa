"""Run configuration of the command-line application.

Sources, lowest precedence first: field defaults, the YAML/JSON document,
``MMWAVE__`` environment overrides, then CLI flags.
"""

import os
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv
from pydantic import Field, ValidationError, field_validator, model_validator

from mmwave_coverage.cli.src.constants import (
    ENV_NESTING_SEPARATOR,
    ENV_PREFIX,
    GainSourceMode,
    GxSource,
    LocalPaths,
    MuOSource,
)
from mmwave_coverage.fitting import (
    DEFAULT_GTOL,
    DEFAULT_RESTARTS,
    PARAM_NAMES,
)
from mmwave_coverage.shared import (
    BaseModelWithDefaults,
    ConfigParseError,
    ConfigValidationError,
    Family,
    GainKind,
    OutputError,
    SystemParams,
)

DEFAULT_T_GRID_DB: list[float] = [-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0]


class Sampling(BaseModelWithDefaults):
    kind: GainKind = Field(default=GainKind.MISALIGNED)
    n_samples: int = Field(default=100_000, ge=1)


class Fitting(BaseModelWithDefaults):
    families: list[Family] = Field(
        default_factory=lambda: [
            Family.LOGLOGISTIC,
            Family.BURR,
            Family.LOGNORMAL,
            Family.NAKAGAMI,
        ],
        min_length=1,
    )
    gtol: float = Field(default=DEFAULT_GTOL, gt=0)
    restarts: int = Field(default=DEFAULT_RESTARTS, ge=0)
    # Fit a sample CSV written by ``gains`` instead of sampling afresh.
    samples_file: Path | None = Field(default=None)


class Coverage(BaseModelWithDefaults):
    t_grid_db: list[float] = Field(
        default_factory=lambda: list(DEFAULT_T_GRID_DB), min_length=1
    )
    gx_source: GxSource = Field(default=GxSource.PUBLISHED)
    gx_family: Family = Field(default=Family.LOGLOGISTIC)
    gx_params: dict[str, float] | None = Field(default=None)
    # Defaults to n_tx * n_rx.
    truncation_cap: float | None = Field(default=None, gt=0)
    mu_o_source: MuOSource = Field(default=MuOSource.POWER_LAW)
    mu_o: float | None = Field(default=None, gt=0)
    # Samples drawn when a law is fitted rather than taken from a table.
    n_fit_samples: int = Field(default=100_000, ge=1)

    @field_validator("t_grid_db")
    @classmethod
    def strictly_increasing(cls, grid: list[float]) -> list[float]:
        if any(b <= a for a, b in zip(grid, grid[1:], strict=False)):
            raise ValueError("threshold grid must be strictly increasing")
        return grid

    @model_validator(mode="after")
    def explicit_values_present(self) -> "Coverage":
        if self.gx_source is GxSource.EXPLICIT:
            if self.gx_params is None:
                raise ConfigValidationError(
                    "gx_source 'explicit' needs gx_params", "coverage.gx_params"
                )
            expected = set(PARAM_NAMES[self.gx_family])
            if set(self.gx_params) != expected:
                raise ConfigValidationError(
                    f"{self.gx_family.value} needs parameters {sorted(expected)}",
                    "coverage.gx_params",
                )
        if self.mu_o_source is MuOSource.EXPLICIT and self.mu_o is None:
            raise ConfigValidationError(
                "mu_o_source 'explicit' needs mu_o", "coverage.mu_o"
            )
        return self


class Simulation(BaseModelWithDefaults):
    n_drops: int = Field(default=10_000, ge=1)
    region_radius: float = Field(default=2000.0, gt=0)
    gain_source: GainSourceMode = Field(default=GainSourceMode.FITTED)


class RunConfig(BaseModelWithDefaults):
    system: SystemParams = Field(default_factory=SystemParams)
    sampling: Sampling = Field(default_factory=Sampling)
    fitting: Fitting = Field(default_factory=Fitting)
    coverage: Coverage = Field(default_factory=Coverage)
    simulation: Simulation = Field(default_factory=Simulation)
    output_dir: Path = Field(default=Path(LocalPaths.OUTPUTS_DIR.value))
    threads: int = Field(default=1, ge=1)

    @classmethod
    def from_yaml(cls, file_path: str | Path) -> "RunConfig":
        try:
            with open(file_path, encoding="utf-8") as file:
                text = file.read()
        except OSError as e:
            raise OutputError(f"Failed to load config from {file_path}: {e}") from e
        return parse_config(text)

    @classmethod
    def load(
        cls,
        path: str | Path | None = None,
        overrides: Mapping[str, Any] | None = None,
        environ: Mapping[str, str] | None = None,
    ) -> "RunConfig":
        """Load the shipped (or given) document, then env and flag overrides."""
        load_dotenv()
        config_path = (
            Path(path)
            if path is not None
            else Path(__file__).parent / LocalPaths.CONFIG_FILE.value
        )
        if path is not None and not config_path.exists():
            raise OutputError(f"Config file not found: {config_path}")
        data = (
            _load_document(config_path.read_text(encoding="utf-8"))
            if config_path.exists()
            else {}
        )
        data = apply_env_overrides(data, os.environ if environ is None else environ)
        if overrides:
            data = _merge(data, overrides)
        return _validate(data)


Config = RunConfig


def _load_document(text: str) -> dict[str, Any]:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(e, "problem", None) or str(e)
        raise ConfigParseError(str(problem), line=line) from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigParseError("configuration must be a mapping at the top level")
    return data


def _validate(data: Mapping[str, Any]) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        cause = first.get("ctx", {}).get("error")
        if isinstance(cause, ConfigValidationError):
            raise cause from e
        field = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ConfigValidationError(first["msg"], field) from e


def _merge(base: Mapping[str, Any], update: Mapping[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def apply_env_overrides(
    data: Mapping[str, Any], environ: Mapping[str, str]
) -> dict[str, Any]:
    """Overlay ``MMWAVE__SECTION__KEY=value`` variables onto ``data``.

    Values are read as YAML scalars or flow lists, so ``64`` is an int and
    ``[-10, 0, 10]`` a list.
    """
    update: dict[str, Any] = {}
    for name in sorted(environ):
        if not name.startswith(ENV_PREFIX):
            continue
        path = [
            part.lower()
            for part in name[len(ENV_PREFIX) :].split(ENV_NESTING_SEPARATOR)
            if part
        ]
        if not path:
            continue
        try:
            value = yaml.safe_load(environ[name])
        except yaml.YAMLError as e:
            raise ConfigParseError(f"environment variable {name}: {e}") from e
        node = update
        for part in path[:-1]:
            node = node.setdefault(part, {})
        node[path[-1]] = value
    return _merge(data, update)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a YAML or JSON configuration document."""
    return _validate(_load_document(text))


def serialize_config(config: RunConfig) -> str:
    """JSON form of ``config``; :func:`parse_config` reads it back unchanged."""
    return config.model_dump_json(indent=2)

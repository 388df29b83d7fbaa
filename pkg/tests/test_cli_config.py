"""Tests for the run configuration: shipped file, validation, env and flag layers.

The shipped ``config.yaml`` is loaded as-is so drift between the file and the
schema fails here rather than at run time.
"""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest
import yaml

from mmwave_coverage.cli.configs import (
    RunConfig,
    apply_env_overrides,
    parse_config,
    serialize_config,
)
from mmwave_coverage.cli.src import GainSourceMode, GxSource, MuOSource
from mmwave_coverage.shared import (
    ConfigParseError,
    ConfigValidationError,
    ExitCode,
    Family,
    GainKind,
    OutputError,
)

SHIPPED = (
    Path(__file__).resolve().parent.parent
    / "mmwave_coverage"
    / "cli"
    / "configs"
    / "config.yaml"
)


@pytest.mark.unit
class TestShippedConfig:
    def test_parses(self) -> None:
        cfg = RunConfig.from_yaml(SHIPPED)
        assert (cfg.system.n_tx, cfg.system.n_rx) == (256, 64)
        assert cfg.system.beta_los == pytest.approx(10**-7.2)
        assert cfg.system.beta_nlos == pytest.approx(10**-6.14)
        assert cfg.sampling.kind is GainKind.MISALIGNED
        assert cfg.coverage.gx_source is GxSource.PUBLISHED
        assert cfg.coverage.mu_o_source is MuOSource.POWER_LAW
        assert cfg.simulation.gain_source is GainSourceMode.FITTED
        assert cfg.coverage.t_grid_db == [-10, -5, 0, 5, 10, 15, 20]
        assert cfg.output_dir == Path("outputs")

    def test_matches_field_defaults(self) -> None:
        shipped = RunConfig.from_yaml(SHIPPED)
        defaults = RunConfig()
        assert shipped.fitting == defaults.fitting
        assert shipped.coverage == defaults.coverage
        assert shipped.simulation == defaults.simulation
        assert shipped.threads == defaults.threads

    def test_load_without_path_uses_shipped_file(self) -> None:
        assert RunConfig.load(environ={}) == RunConfig.from_yaml(SHIPPED)


@pytest.mark.unit
class TestParseConfig:
    def test_empty_document_gives_defaults(self) -> None:
        assert parse_config("{}") == RunConfig()
        assert parse_config("") == RunConfig()

    def test_json_document(self) -> None:
        cfg = parse_config(json.dumps({"system": {"n_tx": 64, "n_rx": 16}}))
        assert (cfg.system.n_tx, cfg.system.n_rx) == (64, 16)

    def test_null_means_default(self) -> None:
        cfg = parse_config("simulation:\n  n_drops: null\n")
        assert cfg.simulation.n_drops == 10_000

    def test_serialize_round_trip(
        self, make_config_data: Callable[..., dict[str, Any]]
    ) -> None:
        cfg = parse_config(yaml.safe_dump(make_config_data()))
        assert parse_config(serialize_config(cfg)) == cfg

    def test_syntax_error_reports_line(self) -> None:
        with pytest.raises(ConfigParseError) as info:
            parse_config("system:\n  n_tx: 4\n  n_rx: a: b\n")
        assert info.value.line == 3
        assert info.value.exit_code == ExitCode.VALIDATION

    def test_top_level_must_be_mapping(self) -> None:
        with pytest.raises(ConfigParseError):
            parse_config("- 1\n- 2\n")


@pytest.mark.unit
class TestValidation:
    @pytest.mark.parametrize(
        ("data", "field"),
        [
            ({"system": {"n_tx": 0}}, "system.n_tx"),
            ({"system": {"bogus": 1}}, "system.bogus"),
            ({"sampling": {"n_samples": 0}}, "sampling.n_samples"),
            ({"fitting": {"families": []}}, "fitting.families"),
            ({"coverage": {"t_grid_db": [0, 0]}}, "coverage.t_grid_db"),
            ({"coverage": {"truncation_cap": -1}}, "coverage.truncation_cap"),
            ({"simulation": {"gain_source": "oracle"}}, "simulation.gain_source"),
            ({"threads": 0}, "threads"),
        ],
    )
    def test_field_errors(self, data: dict[str, Any], field: str) -> None:
        with pytest.raises(ConfigValidationError) as info:
            parse_config(json.dumps(data))
        assert info.value.field == field
        assert info.value.details == {"field": field}

    def test_explicit_gain_law_needs_parameters(self) -> None:
        with pytest.raises(ConfigValidationError) as info:
            parse_config(json.dumps({"coverage": {"gx_source": "explicit"}}))
        assert info.value.field == "coverage.gx_params"

    def test_explicit_gain_law_parameter_names(self) -> None:
        doc = {
            "coverage": {
                "gx_source": "explicit",
                "gx_family": "burr",
                "gx_params": {"a": 1.0, "b": 0.5},
            }
        }
        with pytest.raises(ConfigValidationError, match="burr") as info:
            parse_config(json.dumps(doc))
        assert info.value.field == "coverage.gx_params"

    def test_explicit_gain_law_accepted(self) -> None:
        doc = {
            "coverage": {
                "gx_source": "explicit",
                "gx_family": "lognormal",
                "gx_params": {"sigma": 2.0, "mu": 0.5},
            }
        }
        assert parse_config(json.dumps(doc)).coverage.gx_family is Family.LOGNORMAL

    def test_explicit_rate_needs_value(self) -> None:
        with pytest.raises(ConfigValidationError) as info:
            parse_config(json.dumps({"coverage": {"mu_o_source": "explicit"}}))
        assert info.value.field == "coverage.mu_o"

    def test_antennas_without_bundled_fit_parse(self) -> None:
        doc = {"system": {"n_tx": 8, "n_rx": 8}, "sampling": {"kind": "aligned"}}
        cfg = parse_config(json.dumps(doc))
        assert cfg.coverage.gx_source is GxSource.PUBLISHED
        assert cfg.system.n_tx == 8

    def test_fitted_law_at_unbundled_antennas(self) -> None:
        doc = {
            "system": {"n_tx": 8, "n_rx": 8},
            "coverage": {"gx_source": "fitted", "gx_family": "burr"},
        }
        assert parse_config(json.dumps(doc)).system.n_tx == 8


@pytest.mark.unit
class TestLayers:
    def test_env_values_are_typed(self) -> None:
        data = apply_env_overrides(
            {"system": {"n_tx": 256}},
            {
                "MMWAVE__SYSTEM__N_RX": "16",
                "MMWAVE__COVERAGE__T_GRID_DB": "[0, 10]",
                "MMWAVE_NO_FILE_LOGS": "1",
                "HOME": "/root",
            },
        )
        assert data == {
            "system": {"n_tx": 256, "n_rx": 16},
            "coverage": {"t_grid_db": [0, 10]},
        }

    def test_env_wins_over_file(self, tmp_path: Path) -> None:
        path = tmp_path / "run.yaml"
        path.write_text("system:\n  n_tx: 64\n  n_rx: 16\n", encoding="utf-8")
        cfg = RunConfig.load(path, environ={"MMWAVE__SYSTEM__N_RX": "4"})
        assert (cfg.system.n_tx, cfg.system.n_rx) == (64, 4)

    def test_flags_win_over_env(self) -> None:
        cfg = RunConfig.load(
            overrides={"system": {"rng_seed": 5}, "threads": 2},
            environ={"MMWAVE__SYSTEM__RNG_SEED": "3", "MMWAVE__THREADS": "8"},
        )
        assert cfg.system.rng_seed == 5
        assert cfg.threads == 2

    def test_process_environment_is_read(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("MMWAVE__SIMULATION__N_DROPS", "17")
        assert RunConfig.load().simulation.n_drops == 17

    def test_bad_env_value(self) -> None:
        with pytest.raises(ConfigParseError, match="MMWAVE__SYSTEM__N_TX"):
            RunConfig.load(environ={"MMWAVE__SYSTEM__N_TX": "[1"})

    def test_env_validation_error_names_field(self) -> None:
        with pytest.raises(ConfigValidationError) as info:
            RunConfig.load(environ={"MMWAVE__SYSTEM__N_TX": "-2"})
        assert info.value.field == "system.n_tx"

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(OutputError):
            RunConfig.load(tmp_path / "absent.yaml", environ={})
        with pytest.raises(OutputError):
            RunConfig.from_yaml(tmp_path / "absent.yaml")

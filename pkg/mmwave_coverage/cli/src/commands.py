"""Handlers of the ``gains``, ``fit``, ``coverage``, ``simulate`` and ``compare`` verbs.

Each handler takes a validated :class:`RunConfig`, writes its artifacts under
``config.output_dir`` and returns the written paths. Library errors propagate
unchanged; ``main`` turns them into the JSON error report.
"""

import json
from pathlib import Path

import pandas as pd

from mmwave_coverage.channel import (
    GainSampleSet,
    read_gain_csv,
    sample_gain_set,
    write_gain_csv,
)
from mmwave_coverage.cli.configs import RunConfig
from mmwave_coverage.coverage import (
    CoverageCurve,
    FittedGainSource,
    FullChannelGainSource,
    GainSource,
    compare_curves,
    coverage_curve,
    empirical_coverage,
    write_curve_csv,
)
from mmwave_coverage.fitting import (
    FittedDist,
    compare_families,
    fit_family,
    published_fit,
    published_surface,
    write_dist_json,
)
from mmwave_coverage.shared import (
    ConfigValidationError,
    Family,
    GainKind,
    InvalidConfigurationError,
    SystemParams,
)

from .constants import GainSourceMode, GxSource, MuOSource
from .io import config_tag, ensure_output_dir, output_path, write_table
from .logger import logger


def resolve_gx(config: RunConfig, params: SystemParams | None = None) -> FittedDist:
    """Misaligned-gain law of a coverage run, capped at ``n_tx * n_rx`` by default."""
    params = params or config.system
    cov = config.coverage
    cap = cov.truncation_cap or params.max_array_gain
    match cov.gx_source:
        case GxSource.PUBLISHED:
            try:
                dist = published_fit(cov.gx_family, params.n_tx, params.n_rx)
            except InvalidConfigurationError as e:
                raise ConfigValidationError(str(e), "coverage.gx_source") from e
        case GxSource.EXPLICIT:
            dist = FittedDist(cov.gx_family, dict(cov.gx_params or {}), cap)
        case GxSource.FITTED:
            samples = sample_gain_set(
                GainKind.MISALIGNED, cov.n_fit_samples, params, config.threads
            )
            dist = fit_family(
                samples,
                cov.gx_family,
                truncation_cap=cap,
                gtol=config.fitting.gtol,
                restarts=config.fitting.restarts,
                seed=params.rng_seed,
            )
    if cov.truncation_cap is not None:
        dist = dist.with_cap(cov.truncation_cap)
    logger.info("Using %s misaligned-gain law %s", cov.gx_source.value, dist.to_dict())
    return dist


def resolve_mu_o(config: RunConfig, params: SystemParams | None = None) -> float:
    """Rate of the exponential aligned gain."""
    params = params or config.system
    cov = config.coverage
    match cov.mu_o_source:
        case MuOSource.EXPLICIT:
            mu_o = float(cov.mu_o)  # type: ignore[arg-type]
        case MuOSource.POWER_LAW:
            mu_o = published_surface().evaluate(params.n_tx, params.n_rx)
        case MuOSource.FITTED:
            samples = sample_gain_set(
                GainKind.ALIGNED, cov.n_fit_samples, params, config.threads
            )
            mu_o = fit_family(samples, Family.EXPONENTIAL)["rate"]
    logger.info("Using %s aligned-gain rate mu_o=%.6g", cov.mu_o_source.value, mu_o)
    return mu_o


def gain_source_for(
    config: RunConfig,
    params: SystemParams | None = None,
    gx: FittedDist | None = None,
    mu_o: float | None = None,
) -> GainSource:
    params = params or config.system
    if config.simulation.gain_source is GainSourceMode.FULL_CHANNEL:
        return FullChannelGainSource(params)
    return FittedGainSource(
        mu_o=mu_o if mu_o is not None else resolve_mu_o(config, params),
        gx=gx if gx is not None else resolve_gx(config, params),
    )


def analytic_curve(
    config: RunConfig,
    params: SystemParams | None = None,
    gx: FittedDist | None = None,
    mu_o: float | None = None,
) -> CoverageCurve:
    params = params or config.system
    return coverage_curve(
        config.coverage.t_grid_db,
        gx if gx is not None else resolve_gx(config, params),
        mu_o if mu_o is not None else resolve_mu_o(config, params),
        params,
        threads=config.threads,
    )


def simulated_curve(
    config: RunConfig,
    params: SystemParams | None = None,
    gx: FittedDist | None = None,
    mu_o: float | None = None,
) -> CoverageCurve:
    params = params or config.system
    return empirical_coverage(
        config.simulation.n_drops,
        config.coverage.t_grid_db,
        gain_source_for(config, params, gx, mu_o),
        params,
        region_radius=config.simulation.region_radius,
        threads=config.threads,
    )


def _curve_path(config: RunConfig, curve: CoverageCurve) -> Path:
    family = curve.gx_family.value if curve.gx_family else "channel"
    return output_path(
        config.output_dir,
        "coverage",
        curve.method.value,
        config_tag(config.system.n_tx, config.system.n_rx),
        family,
        suffix=".csv",
    )


def run_gains(config: RunConfig) -> list[Path]:
    ensure_output_dir(config.output_dir)
    sample_set = sample_gain_set(
        config.sampling.kind,
        config.sampling.n_samples,
        config.system,
        config.threads,
    )
    path = output_path(
        config.output_dir,
        "gains",
        sample_set.kind.value,
        config_tag(sample_set.n_tx, sample_set.n_rx),
        suffix=".csv",
    )
    return [write_gain_csv(sample_set, path)]


def _fit_samples(config: RunConfig) -> GainSampleSet:
    if config.fitting.samples_file is not None:
        sample_set = read_gain_csv(config.fitting.samples_file)
        logger.info(
            "Loaded %d %s samples from %s",
            len(sample_set),
            sample_set.kind.value,
            config.fitting.samples_file,
        )
        return sample_set
    return sample_gain_set(
        config.sampling.kind,
        config.sampling.n_samples,
        config.system,
        config.threads,
    )


def run_fit(config: RunConfig) -> list[Path]:
    """Fit every configured family; write one JSON per fit plus a KS report."""
    ensure_output_dir(config.output_dir)
    sample_set = _fit_samples(config)
    tag = config_tag(sample_set.n_tx, sample_set.n_rx)
    scores = compare_families(
        sample_set,
        config.fitting.families,
        gtol=config.fitting.gtol,
        restarts=config.fitting.restarts,
        seed=sample_set.seed,
    )

    paths = []
    rows = []
    for rank, score in enumerate(scores, start=1):
        family = score.dist.family.value
        paths.append(
            write_dist_json(
                score.dist,
                output_path(
                    config.output_dir,
                    "fit",
                    sample_set.kind.value,
                    tag,
                    family,
                    suffix=".json",
                ),
                ks=score.ks,
                log_likelihood=score.log_likelihood,
                n_samples=len(sample_set),
                rank=rank,
            )
        )
        rows.append(
            {
                "rank": rank,
                "family": family,
                "params": json.dumps(score.dist.params, sort_keys=True),
                "ks": score.ks,
                "log_likelihood": score.log_likelihood,
            }
        )
        logger.info("Rank %d: %s ks=%.5f", rank, family, score.ks)

    report = output_path(
        config.output_dir, "fit_report", sample_set.kind.value, tag, suffix=".csv"
    )
    paths.append(write_table(pd.DataFrame(rows), report))
    return paths


def run_coverage(config: RunConfig) -> list[Path]:
    ensure_output_dir(config.output_dir)
    curve = analytic_curve(config)
    return [write_curve_csv(curve, _curve_path(config, curve))]


def run_simulate(config: RunConfig) -> list[Path]:
    ensure_output_dir(config.output_dir)
    curve = simulated_curve(config)
    return [write_curve_csv(curve, _curve_path(config, curve))]


def run_compare(config: RunConfig) -> list[Path]:
    """Analytic and simulated curves on the same grid, joined with deltas."""
    ensure_output_dir(config.output_dir)
    gx, mu_o = resolve_gx(config), resolve_mu_o(config)
    analytic = analytic_curve(config, gx=gx, mu_o=mu_o)
    simulated = simulated_curve(config, gx=gx, mu_o=mu_o)
    joined = compare_curves(analytic, simulated)
    path = output_path(
        config.output_dir,
        "compare",
        config_tag(config.system.n_tx, config.system.n_rx),
        suffix=".csv",
    )
    return [
        write_curve_csv(analytic, _curve_path(config, analytic)),
        write_curve_csv(simulated, _curve_path(config, simulated)),
        write_table(joined, path),
    ]

"""End-to-end reproduction recipes behind ``reproduce <target>``.

=======  ==============================================================
target   artifacts
=======  ==============================================================
fig2     aligned-gain CDF against the fitted exponential, KS and atom summary
fig3     fitted aligned-gain rates over the antenna grid and power law
fig4     densities of the four bundled misaligned-gain fits at 256x64
fig5     analytic vs. simulated coverage at 64x16 and 256x64
fig6     analytic coverage under the four misaligned-gain fits
=======  ==============================================================

Sample counts come from ``sampling.n_samples``, drop counts from
``simulation.n_drops`` and the threshold grid of fig5 from
``coverage.t_grid_db``; everything else uses the bundled parameters.
"""

from collections.abc import Callable
from pathlib import Path

import numpy as np
import pandas as pd

from mmwave_coverage.channel import sample_gain_set
from mmwave_coverage.cli.configs import RunConfig
from mmwave_coverage.coverage import compare_curves, coverage_curve, write_curve_csv
from mmwave_coverage.fitting import (
    cdf_eval,
    fit_family,
    fit_power_surface,
    ks_statistic,
    pdf_eval,
    published_fit,
    published_surface,
)
from mmwave_coverage.shared import Family, GainKind

from .commands import analytic_curve, simulated_curve
from .constants import ReproduceTarget
from .io import config_tag, ensure_output_dir, output_path, write_json, write_table
from .logger import logger

ALIGNED_CONFIGS: tuple[tuple[int, int], ...] = ((256, 64), (64, 16))
VALIDATION_CONFIGS: tuple[tuple[int, int], ...] = ((64, 16), (256, 64))
ANTENNA_GRID: tuple[int, ...] = (4, 16, 64, 256)
MISALIGNED_FAMILIES: tuple[Family, ...] = (
    Family.LOGLOGISTIC,
    Family.BURR,
    Family.LOGNORMAL,
    Family.NAKAGAMI,
)
FAMILY_CONFIG: tuple[int, int] = (256, 64)
FIG6_T_GRID_DB: list[float] = [float(t) for t in range(-10, 31, 5)]
CDF_POINTS: int = 200
PDF_POINTS: int = 400
PDF_GAIN_FLOOR: float = 1e-3


def _csv(out: Path, *parts: str) -> Path:
    return output_path(out, *parts, suffix=".csv")


def reproduce_fig2(config: RunConfig) -> list[Path]:
    """Exponential fit of the aligned gain at 256x64 and 64x16."""
    out = ensure_output_dir(config.output_dir)
    paths, summary = [], []
    for n_tx, n_rx in ALIGNED_CONFIGS:
        params = config.system.with_antennas(n_tx, n_rx)
        sample_set = sample_gain_set(
            GainKind.ALIGNED, config.sampling.n_samples, params, config.threads
        )
        dist = fit_family(sample_set, Family.EXPONENTIAL)
        ks = ks_statistic(sample_set, dist)

        ordered = np.sort(sample_set.samples)
        grid = np.quantile(ordered, np.linspace(0.0, 1.0, CDF_POINTS))
        empirical = np.searchsorted(ordered, grid, side="right") / ordered.size
        table = pd.DataFrame(
            {
                "gain": grid,
                "empirical_cdf": empirical,
                "exponential_cdf": cdf_eval(dist, grid),
            }
        )
        paths.append(write_table(table, _csv(out, "fig2", config_tag(n_tx, n_rx))))
        summary.append(
            {
                "n_tx": n_tx,
                "n_rx": n_rx,
                "n_samples": len(sample_set),
                "mu_o": dist["rate"],
                "mean_gain": float(np.mean(sample_set.samples)),
                "ks": ks,
                "max_gain_mass": sample_set.max_gain_mass,
            }
        )
        logger.info(
            "Aligned gain %dx%d: mu_o=%.5g ks=%.4f mass at n_tx*n_rx=%.4f",
            n_tx,
            n_rx,
            dist["rate"],
            ks,
            sample_set.max_gain_mass,
        )
    paths.append(write_table(pd.DataFrame(summary), _csv(out, "fig2_summary")))
    return paths


def reproduce_fig3(config: RunConfig) -> list[Path]:
    """Aligned-gain rate over the 4x4 antenna grid and its power-law fit."""
    out = ensure_output_dir(config.output_dir)
    rows = []
    for n_tx in ANTENNA_GRID:
        for n_rx in ANTENNA_GRID:
            params = config.system.with_antennas(n_tx, n_rx)
            sample_set = sample_gain_set(
                GainKind.ALIGNED, config.sampling.n_samples, params, config.threads
            )
            rate = fit_family(sample_set, Family.EXPONENTIAL)["rate"]
            rows.append((n_tx, n_rx, rate))

    surface = fit_power_surface(rows)
    published = published_surface()
    table = pd.DataFrame(rows, columns=["n_tx", "n_rx", "mu_o"])
    table["surface_fit"] = [surface.evaluate(p, q) for p, q, _ in rows]
    table["published_law"] = [published.evaluate(p, q) for p, q, _ in rows]
    logger.info(
        "Fitted mu_o = %.4g (n_tx n_rx)^%.4f; published %.4g (n_tx n_rx)^%.4f",
        surface.coeff,
        surface.expo,
        published.coeff,
        published.expo,
    )
    return [
        write_table(table, _csv(out, "fig3_rates")),
        write_json(
            {
                "coeff": surface.coeff,
                "expo": surface.expo,
                "published_coeff": published.coeff,
                "published_expo": published.expo,
            },
            output_path(out, "fig3_surface", suffix=".json"),
        ),
    ]


def reproduce_fig4(config: RunConfig) -> list[Path]:
    """Densities of the bundled misaligned-gain fits on a log grid up to the cap."""
    out = ensure_output_dir(config.output_dir)
    fits = [published_fit(family, *FAMILY_CONFIG) for family in MISALIGNED_FAMILIES]
    cap = max(dist.truncation_cap or 0.0 for dist in fits)
    gains = np.geomspace(PDF_GAIN_FLOOR, cap, PDF_POINTS)
    table = pd.DataFrame({"gain": gains})
    for dist in fits:
        table[dist.family.value] = pdf_eval(dist, gains)
    return [write_table(table, _csv(out, "fig4_pdfs"))]


def reproduce_fig5(config: RunConfig) -> list[Path]:
    """Analytic against simulated coverage at 64x16 and 256x64."""
    out = ensure_output_dir(config.output_dir)
    paths, joined = [], []
    for n_tx, n_rx in VALIDATION_CONFIGS:
        params = config.system.with_antennas(n_tx, n_rx)
        tag = config_tag(n_tx, n_rx)
        gx = published_fit(Family.LOGLOGISTIC, n_tx, n_rx)
        mu_o = published_surface().evaluate(n_tx, n_rx)
        analytic = analytic_curve(config, params, gx=gx, mu_o=mu_o)
        simulated = simulated_curve(config, params, gx=gx, mu_o=mu_o)
        paths.append(write_curve_csv(analytic, _csv(out, "fig5_analytic", tag)))
        paths.append(write_curve_csv(simulated, _csv(out, "fig5_montecarlo", tag)))
        frame = compare_curves(analytic, simulated)
        frame.insert(0, "config", tag)
        joined.append(frame)
    paths.append(
        write_table(pd.concat(joined, ignore_index=True), _csv(out, "fig5_compare"))
    )
    return paths


def reproduce_fig6(config: RunConfig) -> list[Path]:
    """Analytic coverage at 256x64 under each bundled misaligned-gain fit."""
    out = ensure_output_dir(config.output_dir)
    params = config.system.with_antennas(*FAMILY_CONFIG)
    mu_o = published_surface().evaluate(*FAMILY_CONFIG)
    paths = []
    wide = pd.DataFrame({"T_dB": FIG6_T_GRID_DB})
    for family in MISALIGNED_FAMILIES:
        gx = published_fit(family, *FAMILY_CONFIG)
        curve = coverage_curve(FIG6_T_GRID_DB, gx, mu_o, params, threads=config.threads)
        paths.append(write_curve_csv(curve, _csv(out, "fig6", family.value)))
        wide[family.value] = curve.coverages
    paths.append(write_table(wide, _csv(out, "fig6_curves")))
    return paths


RECIPES: dict[ReproduceTarget, Callable[[RunConfig], list[Path]]] = {
    ReproduceTarget.FIG2: reproduce_fig2,
    ReproduceTarget.FIG3: reproduce_fig3,
    ReproduceTarget.FIG4: reproduce_fig4,
    ReproduceTarget.FIG5: reproduce_fig5,
    ReproduceTarget.FIG6: reproduce_fig6,
}


def run_reproduce(target: ReproduceTarget, config: RunConfig) -> list[Path]:
    target = ReproduceTarget(target)
    logger.info("Reproducing %s into %s", target.value, config.output_dir)
    return RECIPES[target](config)

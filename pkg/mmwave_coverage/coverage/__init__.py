"""Analytic and simulated SIR coverage."""

from .coverage_analytic import (
    CoverageIntegrator,
    QuadratureRules,
    association_pdf,
    association_probability,
    association_radius,
    coverage_curve,
    coverage_probability,
    equal_pathloss_boundary,
    laplace_interference,
    p_los,
    p_state,
    path_loss,
)
from .curves import (
    CoverageCurve,
    compare_curves,
    db_to_linear,
    read_curve_csv,
    write_curve_csv,
)
from .network_sim import (
    DEFAULT_REGION_RADIUS,
    ConstantGainSource,
    DropResult,
    FittedGainSource,
    FullChannelGainSource,
    GainSource,
    NetworkSnapshot,
    SirSample,
    empirical_coverage,
    generate_snapshot,
    run_drop,
    simulate_drops,
    snapshot_sir,
)

__all__ = [
    "DEFAULT_REGION_RADIUS",
    "ConstantGainSource",
    "CoverageCurve",
    "CoverageIntegrator",
    "DropResult",
    "FittedGainSource",
    "FullChannelGainSource",
    "GainSource",
    "NetworkSnapshot",
    "QuadratureRules",
    "SirSample",
    "association_pdf",
    "association_probability",
    "association_radius",
    "compare_curves",
    "coverage_curve",
    "coverage_probability",
    "db_to_linear",
    "empirical_coverage",
    "equal_pathloss_boundary",
    "generate_snapshot",
    "laplace_interference",
    "p_los",
    "p_state",
    "path_loss",
    "read_curve_csv",
    "run_drop",
    "simulate_drops",
    "snapshot_sir",
    "write_curve_csv",
]

"""Gain distribution families, maximum-likelihood fitting and bundled fits."""

from .dist_fit import (
    DEFAULT_GTOL,
    DEFAULT_RESTARTS,
    MIN_FIT_SAMPLES,
    FamilyScore,
    SurfaceFit,
    compare_families,
    fit_family,
    fit_power_surface,
    ks_statistic,
    log_likelihood,
    mu_o_power_law,
)
from .distributions import (
    PARAM_NAMES,
    FittedDist,
    cdf_eval,
    fractional_moment,
    logpdf_eval,
    pdf_eval,
    quantile,
    read_dist_json,
    sample,
    write_dist_json,
)
from .published import (
    available_configurations,
    published_fit,
    published_loglogistic,
    published_surface,
)

__all__ = [
    "DEFAULT_GTOL",
    "DEFAULT_RESTARTS",
    "MIN_FIT_SAMPLES",
    "PARAM_NAMES",
    "FamilyScore",
    "FittedDist",
    "SurfaceFit",
    "available_configurations",
    "cdf_eval",
    "compare_families",
    "fit_family",
    "fit_power_surface",
    "fractional_moment",
    "ks_statistic",
    "log_likelihood",
    "logpdf_eval",
    "mu_o_power_law",
    "pdf_eval",
    "published_fit",
    "published_loglogistic",
    "published_surface",
    "quantile",
    "read_dist_json",
    "sample",
    "write_dist_json",
]

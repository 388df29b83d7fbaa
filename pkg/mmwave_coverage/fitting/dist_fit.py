"""Maximum-likelihood fitting of gain distributions and the aligned-rate surface.

Exponential and log-normal fits are closed form. Nakagami reduces to a
one-dimensional root for the shape. Log-logistic and Burr minimize the mean
negative log-likelihood over log-parameters with L-BFGS-B and analytic
gradients, then polish with Newton steps until the gradient norm is below
``gtol``; jittered restarts cover the flat likelihood of heavy-tailed shapes.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import optimize, special, stats

from mmwave_coverage.channel.gain_sampler import GainSampleSet
from mmwave_coverage.shared import (
    ConvergenceError,
    EmptySamplesError,
    Family,
    GainKind,
    InvalidArgumentError,
    NonFiniteSampleError,
    TooFewSamplesError,
    make_rng,
)

from .distributions import FittedDist, cdf_eval, logpdf_eval

logger = logging.getLogger(__name__)

MIN_FIT_SAMPLES: int = 100
DEFAULT_GTOL: float = 1e-8
DEFAULT_RESTARTS: int = 5
# Zero samples are replaced by the smallest positive sample times this.
ZERO_REPLACEMENT_FACTOR: float = 1e-3

_NEWTON_STEPS: int = 25
_HESSIAN_STEP: float = 1e-5
_RESTART_JITTER: float = 1.0

Objective = Callable[[NDArray[np.float64]], tuple[float, NDArray[np.float64]]]


@dataclass(frozen=True)
class SurfaceFit:
    """Power law ``mu_o = coeff * (n_tx * n_rx) ** expo``."""

    coeff: float
    expo: float

    def __post_init__(self) -> None:
        if not self.coeff > 0:
            raise InvalidArgumentError("coeff must be positive")

    def evaluate(self, n_tx: int, n_rx: int) -> float:
        return self.coeff * float(n_tx * n_rx) ** self.expo


def mu_o_power_law(
    n_tx: int, n_rx: int, coeff: float = 0.814, expo: float = -0.927
) -> float:
    """Aligned-gain rate from the measured power law."""
    return SurfaceFit(coeff, expo).evaluate(n_tx, n_rx)


@dataclass(frozen=True)
class FamilyScore:
    dist: FittedDist
    ks: float
    log_likelihood: float


def _raw_samples(samples: GainSampleSet | ArrayLike) -> NDArray[np.float64]:
    values = samples.samples if isinstance(samples, GainSampleSet) else samples
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise EmptySamplesError("no samples given")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteSampleError("samples must be finite")
    if np.any(arr < 0):
        raise InvalidArgumentError("gain samples must be nonnegative")
    return arr


def _positive(arr: NDArray[np.float64]) -> NDArray[np.float64]:
    if np.all(arr > 0):
        return arr
    positive = arr[arr > 0]
    if positive.size == 0:
        raise InvalidArgumentError("all samples are zero")
    floor = positive.min() * ZERO_REPLACEMENT_FACTOR
    logger.debug("Replacing %d zero samples with %g", arr.size - positive.size, floor)
    return np.where(arr > 0, arr, floor)


def _default_cap(samples: GainSampleSet | ArrayLike) -> float | None:
    if isinstance(samples, GainSampleSet) and samples.kind is GainKind.MISALIGNED:
        return samples.max_array_gain
    return None


def _loglogistic_objective(z: NDArray[np.float64]) -> Objective:
    def objective(theta: NDArray[np.float64]) -> tuple[float, NDArray[np.float64]]:
        log_a, log_b = theta
        b = math.exp(log_b)
        u = b * (z - log_a)
        sp = np.logaddexp(0.0, u)
        tilt = 1.0 - 2.0 * special.expit(u)
        nll = -float(np.mean(log_b + u - z - 2.0 * sp))
        grad = -np.array([np.mean(-b * tilt), np.mean(1.0 + u * tilt)])
        return nll, grad

    return objective


def _burr_objective(z: NDArray[np.float64]) -> Objective:
    def objective(theta: NDArray[np.float64]) -> tuple[float, NDArray[np.float64]]:
        log_c, log_k = theta
        c, k = math.exp(log_c), math.exp(log_k)
        cz = c * z
        sp = np.logaddexp(0.0, cz)
        nll = -float(np.mean(log_c + log_k + (c - 1.0) * z - (k + 1.0) * sp))
        grad = -np.array(
            [
                np.mean(1.0 + cz - (k + 1.0) * special.expit(cz) * cz),
                np.mean(1.0 - k * sp),
            ]
        )
        return nll, grad

    return objective


def _newton_polish(
    objective: Objective, theta: NDArray[np.float64], gtol: float
) -> NDArray[np.float64]:
    """Newton steps with a finite-difference Hessian of the analytic gradient."""
    for _ in range(_NEWTON_STEPS):
        value, grad = objective(theta)
        if np.linalg.norm(grad) < gtol:
            break
        hessian = np.empty((theta.size, theta.size))
        for i in range(theta.size):
            step = np.zeros_like(theta)
            step[i] = _HESSIAN_STEP
            forward, backward = objective(theta + step)[1], objective(theta - step)[1]
            hessian[:, i] = (forward - backward) / (2.0 * _HESSIAN_STEP)
        hessian = 0.5 * (hessian + hessian.T)
        if np.any(np.linalg.eigvalsh(hessian) <= 0):
            break
        candidate = theta - np.linalg.solve(hessian, grad)
        if objective(candidate)[0] > value + 1e-12 * max(1.0, abs(value)):
            break
        theta = candidate
    return theta


def _minimize(
    objective: Objective,
    start: NDArray[np.float64],
    *,
    family: Family,
    gtol: float,
    restarts: int,
    seed: int,
) -> NDArray[np.float64]:
    rng = make_rng(seed)
    best: tuple[float, NDArray[np.float64]] | None = None
    attempts: list[dict[str, float]] = []

    for attempt in range(restarts + 1):
        x0 = start.copy()
        if attempt > 0:
            x0 += rng.uniform(-_RESTART_JITTER, _RESTART_JITTER, size=start.size)
        result = optimize.minimize(
            objective,
            x0,
            jac=True,
            method="L-BFGS-B",
            bounds=[(-30.0, 30.0)] * start.size,
            options={"maxiter": 2000, "gtol": gtol * 1e-2, "ftol": 1e-15},
        )
        theta = _newton_polish(objective, np.asarray(result.x, dtype=float), gtol)
        value, grad = objective(theta)
        grad_norm = float(np.linalg.norm(grad))
        attempts.append({"nll": value, "grad_norm": grad_norm})
        logger.debug(
            "%s attempt %d: nll=%.12g grad_norm=%.3g",
            family.value,
            attempt,
            value,
            grad_norm,
        )
        if grad_norm < gtol and math.isfinite(value):
            if best is None or value < best[0]:
                best = (value, theta)
            # A converged first start is accepted without further restarts.
            if attempt == 0:
                break

    if best is None:
        raise ConvergenceError(
            f"{family.value} fit did not reach gradient norm {gtol:g} "
            f"after {restarts} restarts",
            diagnostics={"family": family.value, "gtol": gtol, "attempts": attempts},
        )
    if len(attempts) > 1:
        logger.info("%s fit needed %d attempts", family.value, len(attempts))
    return best[1]


def _fit_nakagami(y: NDArray[np.float64]) -> dict[str, float]:
    y2 = y * y
    g = float(np.mean(y2))
    # ln m - digamma(m) = ln E[y^2] - E[ln y^2] >= 0 by Jensen.
    s = math.log(g) - float(np.mean(np.log(y2)))
    if s <= 0:
        raise InvalidArgumentError("samples are degenerate (all equal)")
    m0 = (3.0 - s + math.sqrt((s - 3.0) ** 2 + 24.0 * s)) / (12.0 * s)

    def h(m: float) -> float:
        return math.log(m) - float(special.digamma(m)) - s

    lo, hi = m0 / 2.0, m0 * 2.0
    while h(lo) < 0:
        lo /= 2.0
    while h(hi) > 0:
        hi *= 2.0
    m = optimize.brentq(h, lo, hi, xtol=1e-14, rtol=1e-14, maxiter=200)
    return {"m": float(m), "g": g}


def fit_family(
    samples: GainSampleSet | ArrayLike,
    family: Family,
    *,
    truncation_cap: float | None = None,
    gtol: float = DEFAULT_GTOL,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> FittedDist:
    """Maximum-likelihood fit of ``family`` to nonnegative gain samples.

    Misaligned sample sets default to ``truncation_cap = n_tx * n_rx``.
    """
    family = Family(family)
    y = _raw_samples(samples)
    if y.size < MIN_FIT_SAMPLES:
        raise TooFewSamplesError(int(y.size), MIN_FIT_SAMPLES)
    cap = truncation_cap if truncation_cap is not None else _default_cap(samples)

    params: dict[str, float]
    if family is Family.EXPONENTIAL:
        params = {"rate": 1.0 / float(np.mean(y))}
    else:
        y = _positive(y)
        z = np.log(y)
        spread = float(np.std(z))
        if family is not Family.NAKAGAMI and spread == 0:
            raise InvalidArgumentError("samples are degenerate (all equal)")
        if family is Family.LOGNORMAL:
            params = {"sigma": spread, "mu": float(np.mean(z))}
        elif family is Family.NAKAGAMI:
            params = _fit_nakagami(y)
        else:
            shape0 = math.pi / (math.sqrt(3.0) * spread)
            if family is Family.LOGLOGISTIC:
                start = np.array([float(np.median(z)), math.log(shape0)])
                objective = _loglogistic_objective(z)
                names = ("a", "b")
            else:
                start = np.array([math.log(shape0), 0.0])
                objective = _burr_objective(z)
                names = ("c", "k")
            theta = _minimize(
                objective, start, family=family, gtol=gtol, restarts=restarts, seed=seed
            )
            params = dict(zip(names, np.exp(theta).tolist(), strict=True))

    dist = FittedDist(family, params, cap)
    logger.info("Fitted %s to %d samples: %s", family.value, y.size, dist.params)
    return dist


def log_likelihood(dist: FittedDist, samples: GainSampleSet | ArrayLike) -> float:
    y = _raw_samples(samples)
    if dist.family is not Family.EXPONENTIAL:
        y = _positive(y)
    return float(np.sum(logpdf_eval(dist, y)))


def ks_statistic(samples: GainSampleSet | ArrayLike, dist: FittedDist) -> float:
    """Sup-norm distance between the empirical CDF and ``dist``'s CDF."""
    y = _raw_samples(samples)
    result = stats.kstest(y, lambda v: cdf_eval(dist, v))
    return float(result.statistic)


def compare_families(
    samples: GainSampleSet | ArrayLike,
    families: Iterable[Family],
    **fit_kwargs: object,
) -> list[FamilyScore]:
    """Fit every family and rank the fits by KS statistic, best first."""
    scores = []
    for family in families:
        dist = fit_family(samples, family, **fit_kwargs)  # type: ignore[arg-type]
        scores.append(
            FamilyScore(
                dist=dist,
                ks=ks_statistic(samples, dist),
                log_likelihood=log_likelihood(dist, samples),
            )
        )
    scores.sort(key=lambda s: s.ks)
    return scores


def fit_power_surface(grid: Sequence[tuple[int, int, float]]) -> SurfaceFit:
    """Least-squares fit of ``ln mu_o = ln coeff + expo * ln(n_tx * n_rx)``.

    Points are sorted first so the result does not depend on row order.
    """
    if len(grid) < 3:
        raise InvalidArgumentError(f"need at least 3 grid points, got {len(grid)}")
    points = []
    for n_tx, n_rx, mu_o in grid:
        if n_tx < 1 or n_rx < 1 or not mu_o > 0:
            raise InvalidArgumentError(f"invalid grid point ({n_tx}, {n_rx}, {mu_o})")
        points.append((math.log(n_tx * n_rx), math.log(mu_o)))
    points.sort()
    x, y = np.array(points).T
    if np.unique(x).size < 2:
        raise InvalidArgumentError("grid needs at least two distinct antenna products")
    expo, log_coeff = np.polyfit(x, y, 1)
    return SurfaceFit(coeff=float(math.exp(log_coeff)), expo=float(expo))

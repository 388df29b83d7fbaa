"""Closed-form SIR coverage of a PPP mmWave network with LoS/NLoS links.

A typical UE at the origin associates with the BS of largest ``beta r^-alpha``.
With an exponential aligned gain of rate ``mu_o`` the coverage probability is

    C(T) = sum_i  int_0^inf f_i(r) * L_iL(T, r) * L_iN(T, r) dr

where ``f_i`` is the density of associating with a state-``i`` BS at distance
``r`` and ``L_ij`` is the Laplace functional of state-``j`` interference at
``s = mu_o T / l_i(r)``. State-``j`` interferers lie beyond the equal path-loss
boundary ``B = equal_pathloss_boundary(r, i, j)``. With ``v = B e^w`` the
interference exponent becomes

    E_ij = 2 pi lambda B^2 int_0^inf e^{2w} p_j(B e^w) Phi(mu_o T e^{-alpha_j w}) dw
    Phi(u) = int_0^cap f_Gx(g) (1 - e^{-u g}) dg

so ``Phi`` depends on ``T`` and ``j`` only and is tabulated once per threshold.
Past ``w = W`` (where ``u * cap < 1e-6``) the integrand is linear in ``u`` and
the tail is summed in closed form with incomplete gamma functions.

The misaligned-gain PDF is integrated up to its truncation cap without
renormalization.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import brentq

from mmwave_coverage.fitting import FittedDist, fractional_moment, pdf_eval, quantile
from mmwave_coverage.shared import (
    CoverageMethod,
    InvalidArgumentError,
    InvalidConfigurationError,
    LinkState,
    MmwaveError,
    SystemParams,
)

from .curves import CoverageCurve, db_to_linear
from .quadrature import log_rule, upper_incomplete_gamma, width_rule

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]

# Lower end of the gain integral, relative to the cap.
GAIN_FLOOR_REL: float = 1e-12
# Upper quantile standing in for the cap of an uncapped law with finite moments.
UNCAPPED_QUANTILE: float = 1.0 - 1e-12
# The w-integral switches to the closed-form tail once u * cap drops below this.
LINEAR_REGIME: float = 1e-6
# Association mass left beyond the outer integration radius.
ASSOCIATION_TAIL: float = 1e-7
# Inner radius, in units of the mean BS spacing 1/sqrt(lambda).
INNER_RADIUS_REL: float = 1e-4
# Tolerated upward step between consecutive curve points before it is an error.
CURVE_NOISE_TOL: float = 1e-6

Panel = tuple[float, int]


@dataclass(frozen=True)
class QuadratureRules:
    """Panel width and Gauss-Legendre order of each composite rule.

    Widths are in e-folds for the gain and radius rules and in units of ``w``
    for the interference rule.
    """

    gain: Panel = (0.5, 12)
    interference: Panel = (0.25, 8)
    radius: Panel = (0.25, 8)

    def refined(self) -> QuadratureRules:
        """Half the panel width and four more nodes per panel on every rule."""
        return QuadratureRules(
            *((width / 2.0, order + 4) for width, order in astuple(self))
        )


DEFAULT_RULES = QuadratureRules()


def _positive_radius(r: ArrayLike) -> FloatArray:
    arr = np.asarray(r, dtype=float)
    if np.any(~(arr > 0)):
        raise InvalidArgumentError("distance must be > 0")
    return arr


def _scalar_or_array(arr: FloatArray, like: ArrayLike) -> FloatArray | float:
    return float(arr) if np.ndim(like) == 0 else arr


def path_loss(
    r: ArrayLike, state: LinkState, params: SystemParams
) -> FloatArray | float:
    """``beta_j * r^-alpha_j`` for the state's path-loss law."""
    arr = _positive_radius(r)
    state = LinkState(state)
    return _scalar_or_array(params.beta(state) * arr ** -params.alpha(state), r)


def p_los(r: ArrayLike, params: SystemParams) -> FloatArray | float:
    """LoS probability ``exp(-los_decay * r)``."""
    arr = np.asarray(r, dtype=float)
    if np.any(~(arr >= 0)):
        raise InvalidArgumentError("distance must be >= 0")
    return _scalar_or_array(np.exp(-params.los_decay * arr), r)


def p_state(
    r: ArrayLike, state: LinkState, params: SystemParams
) -> FloatArray | float:
    """Probability that a link of length ``r`` is in ``state``."""
    arr = np.asarray(r, dtype=float)
    if np.any(~(arr >= 0)):
        raise InvalidArgumentError("distance must be >= 0")
    x = params.los_decay * arr
    value = np.exp(-x) if LinkState(state) is LinkState.LOS else -np.expm1(-x)
    return _scalar_or_array(value, r)


def equal_pathloss_boundary(
    r: ArrayLike, i: LinkState, j: LinkState, params: SystemParams
) -> FloatArray | float:
    """Distance where a state-``j`` link matches a state-``i`` link at ``r``."""
    arr = _positive_radius(r)
    i, j = LinkState(i), LinkState(j)
    if i is j:
        return _scalar_or_array(arr.copy(), r)
    ratio = params.beta(j) / params.beta(i)
    value = (ratio * arr ** params.alpha(i)) ** (1.0 / params.alpha(j))
    return _scalar_or_array(value, r)


def _los_mass(radius: FloatArray, c: float) -> FloatArray:
    """``int_0^R v e^{-c v} dv``."""
    x = c * radius
    small = x < 1e-2
    xs = np.where(small, x, 0.0)
    series = xs**2 / 2.0 - xs**3 / 3.0 + xs**4 / 8.0 - xs**5 / 30.0
    closed = -np.expm1(-x) - x * np.exp(-x)
    return np.where(small, series, closed) / c**2


def _state_mass(
    radius: FloatArray, state: LinkState, params: SystemParams
) -> FloatArray:
    """``int_0^R v p_state(v) dv``."""
    los = _los_mass(radius, params.los_decay)
    return los if state is LinkState.LOS else radius**2 / 2.0 - los


def _log_void(r: FloatArray, i: LinkState, params: SystemParams) -> FloatArray:
    """Log-probability that no BS is stronger than a state-``i`` BS at ``r``."""
    other = i.opposite
    boundary = np.asarray(equal_pathloss_boundary(r, i, other, params))
    mass = _state_mass(r, i, params) + _state_mass(boundary, other, params)
    return -2.0 * math.pi * params.bs_density * mass


def association_pdf(
    r: ArrayLike, i: LinkState, params: SystemParams
) -> FloatArray | float:
    """Density of associating with a state-``i`` BS at distance ``r``."""
    arr = _positive_radius(r)
    i = LinkState(i)
    density = (
        2.0
        * math.pi
        * params.bs_density
        * np.asarray(p_state(arr, i, params))
        * arr
        * np.exp(_log_void(arr, i, params))
    )
    return _scalar_or_array(density, r)


def association_radius(
    i: LinkState, params: SystemParams, tail: float = ASSOCIATION_TAIL
) -> float:
    """Radius beyond which at most ``tail`` of the state-``i`` association mass lies.

    The mass beyond ``R`` is bounded by the void probability at ``R``.
    """
    i = LinkState(i)
    target = math.log(tail)

    def excess(radius: float) -> float:
        return float(_log_void(np.array([radius]), i, params)[0]) - target

    hi = 1.0 / math.sqrt(params.bs_density)
    while excess(hi) > 0:
        hi *= 2.0
    lo = hi / 2.0
    while excess(lo) < 0 and lo > 1e-12:
        lo /= 2.0
    return float(brentq(excess, lo, hi, xtol=1e-9, rtol=1e-12))


def _radius_rule(
    i: LinkState, params: SystemParams, rules: QuadratureRules = DEFAULT_RULES
) -> tuple[FloatArray, FloatArray]:
    r_lo = INNER_RADIUS_REL / math.sqrt(params.bs_density)
    r_hi = association_radius(i, params)
    width, order = rules.radius
    return log_rule(r_lo, max(r_hi, 2.0 * r_lo), width, order)


def association_probability(i: LinkState, params: SystemParams) -> float:
    """Probability that the serving BS is in state ``i``."""
    r, w = _radius_rule(LinkState(i), params)
    return float(np.sum(w * np.asarray(association_pdf(r, i, params))))


def _effective_cap(gx: FittedDist, params: SystemParams) -> float:
    if params.alpha_nlos <= 2.0:
        raise InvalidConfigurationError(
            f"alpha_nlos={params.alpha_nlos} <= 2: NLoS interference diverges"
        )
    if gx.truncation_cap is not None:
        return gx.truncation_cap
    order = 2.0 / params.alpha_nlos
    if math.isinf(fractional_moment(gx, order)):
        raise InvalidConfigurationError(
            f"{gx.family.value} misaligned gain has E[G^{order:.3f}] = inf; "
            "a finite truncation_cap is required"
        )
    return float(quantile(gx, UNCAPPED_QUANTILE))


class CoverageIntegrator:
    """Evaluates Laplace functionals and coverage for one gain law and system.

    The gain quadrature and the outer radius rules are built once and shared
    by every threshold.
    """

    def __init__(
        self,
        gx: FittedDist,
        mu_o: float,
        params: SystemParams,
        rules: QuadratureRules = DEFAULT_RULES,
    ) -> None:
        if not mu_o > 0:
            raise InvalidArgumentError("mu_o must be positive")
        self.gx = gx
        self.mu_o = float(mu_o)
        self.params = params
        self.rules = rules
        self.cap = _effective_cap(gx, params)

        width, order = rules.gain
        g, w = log_rule(self.cap * GAIN_FLOOR_REL, self.cap, width, order)
        self._gain_nodes = g
        self._gain_weights = w * np.asarray(pdf_eval(gx, g))
        self._first_moment = float(np.sum(self._gain_weights * g))
        self._radius_rules = {s: _radius_rule(s, params, rules) for s in LinkState}
        logger.debug(
            "Integrator for %s: cap=%g, captured mass=%.6f",
            gx.family.value,
            self.cap,
            float(np.sum(self._gain_weights)),
        )

    def phi(self, u: ArrayLike) -> FloatArray:
        """``int_0^cap f(g) (1 - e^{-u g}) dg`` for each ``u``."""
        u_arr = np.atleast_1d(np.asarray(u, dtype=float))
        kernel = -np.expm1(-u_arr[:, None] * self._gain_nodes[None, :])
        return kernel @ self._gain_weights

    def _tail(
        self, scale: float, boundary: FloatArray, j: LinkState, w_cut: float
    ) -> FloatArray:
        """Closed-form w-integral from ``w_cut`` to infinity, linear in ``u``."""
        alpha = self.params.alpha(j)
        c = self.params.los_decay
        cb = c * boundary
        cv = cb * math.exp(w_cut)
        los_part = cb ** (alpha - 2.0) * upper_incomplete_gamma(2.0 - alpha, cv)
        if j is LinkState.LOS:
            integral = los_part
        else:
            integral = math.exp((2.0 - alpha) * w_cut) / (alpha - 2.0) - los_part
        return scale * self._first_moment * integral

    def interference_exponent(
        self, t_linear: float, r: FloatArray, i: LinkState, j: LinkState
    ) -> FloatArray:
        """``-ln L_ij(T, r)`` for an array of serving distances."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        if t_linear == 0:
            return np.zeros_like(r)
        alpha = self.params.alpha(j)
        scale = self.mu_o * t_linear
        w_cut = max(0.0, math.log(scale * self.cap / LINEAR_REGIME) / alpha)
        boundary = np.asarray(equal_pathloss_boundary(r, i, j, self.params))

        total = self._tail(scale, boundary, j, w_cut)
        if w_cut > 0:
            width, order = self.rules.interference
            w, weights = width_rule(0.0, w_cut, width, order)
            phi = self.phi(scale * np.exp(-alpha * w))
            v = boundary[:, None] * np.exp(w)[None, :]
            p_j = np.asarray(p_state(v, j, self.params))
            total = total + (p_j * np.exp(2.0 * w)[None, :]) @ (weights * phi)
        return 2.0 * math.pi * self.params.bs_density * boundary**2 * total

    def laplace(
        self, t_linear: float, r: ArrayLike, i: LinkState, j: LinkState
    ) -> FloatArray | float:
        if t_linear < 0:
            raise InvalidArgumentError("threshold must be >= 0")
        arr = _positive_radius(r)
        exponent = self.interference_exponent(t_linear, arr, LinkState(i), LinkState(j))
        value = np.exp(-exponent)
        return float(value[0]) if np.ndim(r) == 0 else value

    def coverage(self, t_linear: float) -> float:
        if t_linear < 0:
            raise InvalidArgumentError("threshold must be >= 0")
        if t_linear == 0:
            return 1.0
        total = 0.0
        for i in LinkState:
            r, w = self._radius_rules[i]
            exponent = sum(
                self.interference_exponent(t_linear, r, i, j) for j in LinkState
            )
            density = np.asarray(association_pdf(r, i, self.params))
            total += float(np.sum(w * density * np.exp(-exponent)))
        return min(1.0, max(0.0, total))


def laplace_interference(
    t_linear: float,
    r: ArrayLike,
    i: LinkState,
    j: LinkState,
    gx: FittedDist,
    mu_o: float,
    params: SystemParams,
) -> FloatArray | float:
    """Laplace functional of state-``j`` interference, state-``i`` server at ``r``."""
    if t_linear < 0:
        raise InvalidArgumentError("threshold must be >= 0")
    return CoverageIntegrator(gx, mu_o, params).laplace(t_linear, r, i, j)


def coverage_probability(
    t_linear: float, gx: FittedDist, mu_o: float, params: SystemParams
) -> float:
    """Probability that the SIR exceeds the linear threshold ``t_linear``."""
    if t_linear < 0:
        raise InvalidArgumentError("threshold must be >= 0")
    return CoverageIntegrator(gx, mu_o, params).coverage(t_linear)


def coverage_curve(
    t_grid_db: Sequence[float],
    gx: FittedDist,
    mu_o: float,
    params: SystemParams,
    threads: int = 1,
) -> CoverageCurve:
    """Analytic coverage at every threshold of ``t_grid_db`` (in dB)."""
    if len(t_grid_db) == 0:
        raise InvalidArgumentError("threshold grid is empty")
    integrator = CoverageIntegrator(gx, mu_o, params)
    thresholds = [float(t) for t in t_grid_db]
    linear = [db_to_linear(t) for t in thresholds]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            raw = list(pool.map(integrator.coverage, linear))
    else:
        raw = [integrator.coverage(t) for t in linear]

    coverages = _monotone(thresholds, raw)
    logger.info(
        "Analytic curve (%s, %dx%d): %s",
        gx.family.value,
        params.n_tx,
        params.n_rx,
        ", ".join(
            f"{t:g}dB={c:.4f}" for t, c in zip(thresholds, coverages, strict=True)
        ),
    )
    return CoverageCurve(
        thresholds_db=thresholds,
        coverages=coverages,
        method=CoverageMethod.ANALYTIC,
        gx_family=gx.family,
        params_snapshot=params,
        metadata={"mu_o": mu_o, "truncation_cap": integrator.cap},
    )


def _monotone(thresholds: list[float], values: list[float]) -> list[float]:
    """Remove quadrature noise so coverage is nonincreasing in the threshold."""
    order = sorted(range(len(values)), key=lambda k: thresholds[k])
    out = list(values)
    running = math.inf
    for k in order:
        if values[k] > running + CURVE_NOISE_TOL:
            raise MmwaveError(
                f"coverage increased from {running:.6g} to {values[k]:.6g} "
                f"at T={thresholds[k]:g} dB"
            )
        running = min(running, values[k])
        out[k] = running
    return out

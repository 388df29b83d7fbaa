"""Monte Carlo validation on Poisson networks.

Each drop places a homogeneous PPP of BSs on a disc around the typical UE,
draws an independent LoS/NLoS state per BS, associates the UE with the BS of
largest ``beta r^-alpha`` and records the SIR

    SIR = G_o l_i(r_o) / sum_{x != o} G_x l_{state(x)}(r_x)

with unit transmit power. Gains come from a :class:`GainSource`.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np
from numpy.typing import NDArray

from mmwave_coverage.channel import sample_gains
from mmwave_coverage.fitting import FittedDist, sample
from mmwave_coverage.shared import (
    DEFAULT_CLUSTER_LAW,
    ClusterLaw,
    CoverageMethod,
    GainKind,
    InvalidArgumentError,
    LinkState,
    SystemParams,
    spawn_rngs,
)

from .curves import CoverageCurve, db_to_linear

logger = logging.getLogger(__name__)

DEFAULT_REGION_RADIUS: float = 2000.0
# Empty draws allowed per snapshot before giving up.
MAX_EMPTY_DRAWS: int = 1000


@dataclass(frozen=True)
class NetworkSnapshot:
    """BS positions (meters, UE at the origin), their states and the server."""

    positions: NDArray[np.float64]
    los: NDArray[np.bool_]
    serving_index: int
    empty_draws: int = 0

    def __post_init__(self) -> None:
        if self.positions.ndim != 2 or self.positions.shape[1] != 2:
            raise InvalidArgumentError("positions must be an (n, 2) array")
        if self.positions.shape[0] < 1:
            raise InvalidArgumentError("a snapshot needs at least one BS")
        if self.los.shape != (self.positions.shape[0],):
            raise InvalidArgumentError("one link state per BS is required")
        if not 0 <= self.serving_index < self.positions.shape[0]:
            raise InvalidArgumentError("serving index out of range")

    @property
    def n_bs(self) -> int:
        return int(self.positions.shape[0])

    @property
    def distances(self) -> NDArray[np.float64]:
        return np.hypot(self.positions[:, 0], self.positions[:, 1])

    @property
    def serving_state(self) -> LinkState:
        return LinkState.LOS if self.los[self.serving_index] else LinkState.NLOS

    def states(self) -> list[LinkState]:
        return [LinkState.LOS if flag else LinkState.NLOS for flag in self.los]

    def path_gains(self, params: SystemParams) -> NDArray[np.float64]:
        """``beta r^-alpha`` of every BS under its own state."""
        r = self.distances
        return np.where(
            self.los,
            params.beta_los * r**-params.alpha_los,
            params.beta_nlos * r**-params.alpha_nlos,
        )


@dataclass(frozen=True)
class SirSample:
    sir_linear: float
    serving_state: LinkState

    def __post_init__(self) -> None:
        if not self.sir_linear > 0:
            raise InvalidArgumentError("SIR must be positive")

    @property
    def interference_free(self) -> bool:
        return math.isinf(self.sir_linear)


@runtime_checkable
class GainSource(Protocol):
    """Draws the serving gain and the interferer gains of one snapshot."""

    def aligned(self, rng: np.random.Generator) -> float: ...

    def misaligned(
        self, rng: np.random.Generator, size: int
    ) -> NDArray[np.float64]: ...


@dataclass(frozen=True)
class FittedGainSource:
    """``G_o ~ Exp(mu_o)``; ``G_x`` from a fitted law, conditioned on ``G_x <= cap``."""

    mu_o: float
    gx: FittedDist

    def __post_init__(self) -> None:
        if not self.mu_o > 0:
            raise InvalidArgumentError("mu_o must be positive")

    def aligned(self, rng: np.random.Generator) -> float:
        return float(rng.exponential(1.0 / self.mu_o))

    def misaligned(self, rng: np.random.Generator, size: int) -> NDArray[np.float64]:
        return sample(self.gx, rng, size, cap=self.gx.truncation_cap)


@dataclass(frozen=True)
class FullChannelGainSource:
    """Gains simulated through the cluster channel model and beamforming."""

    params: SystemParams
    law: ClusterLaw = DEFAULT_CLUSTER_LAW

    def aligned(self, rng: np.random.Generator) -> float:
        return float(sample_gains(GainKind.ALIGNED, 1, self.params, rng, self.law)[0])

    def misaligned(self, rng: np.random.Generator, size: int) -> NDArray[np.float64]:
        if size == 0:
            return np.empty(0)
        return sample_gains(GainKind.MISALIGNED, size, self.params, rng, self.law)


@dataclass(frozen=True)
class ConstantGainSource:
    """Deterministic gains; isolates the geometry in tests."""

    aligned_value: float = 1.0
    misaligned_value: float = 1.0

    def aligned(self, rng: np.random.Generator) -> float:
        return self.aligned_value

    def misaligned(self, rng: np.random.Generator, size: int) -> NDArray[np.float64]:
        return np.full(size, self.misaligned_value)


def generate_snapshot(
    rng: np.random.Generator,
    params: SystemParams,
    region_radius: float = DEFAULT_REGION_RADIUS,
) -> NetworkSnapshot:
    """Drop one PPP network on a disc of ``region_radius`` around the UE."""
    if not region_radius > 0:
        raise InvalidArgumentError("region_radius must be positive")
    mean_count = params.bs_density * math.pi * region_radius**2

    empty_draws = 0
    count = int(rng.poisson(mean_count))
    while count == 0:
        empty_draws += 1
        if empty_draws > MAX_EMPTY_DRAWS:
            raise InvalidArgumentError(
                f"{MAX_EMPTY_DRAWS} empty drops in a row; mean count {mean_count:g}"
            )
        count = int(rng.poisson(mean_count))

    # sqrt(1 - U) keeps r > 0 for U in [0, 1).
    radius = region_radius * np.sqrt(1.0 - rng.random(count))
    angle = rng.uniform(0.0, 2.0 * math.pi, size=count)
    positions = np.column_stack((radius * np.cos(angle), radius * np.sin(angle)))
    los = rng.random(count) < np.exp(-params.los_decay * radius)

    path_gain = np.where(
        los,
        params.beta_los * radius**-params.alpha_los,
        params.beta_nlos * radius**-params.alpha_nlos,
    )
    return NetworkSnapshot(
        positions=positions,
        los=los,
        serving_index=int(np.argmax(path_gain)),
        empty_draws=empty_draws,
    )


def snapshot_sir(
    snapshot: NetworkSnapshot,
    gain_source: GainSource,
    rng: np.random.Generator,
    params: SystemParams,
) -> SirSample:
    """SIR at the UE; ``inf`` when the server is the only BS."""
    path_gain = snapshot.path_gains(params)
    signal = gain_source.aligned(rng) * path_gain[snapshot.serving_index]
    others = np.delete(path_gain, snapshot.serving_index)
    if others.size == 0:
        return SirSample(math.inf, snapshot.serving_state)
    interference = float(np.sum(gain_source.misaligned(rng, others.size) * others))
    if interference == 0:
        return SirSample(math.inf, snapshot.serving_state)
    # A zero aligned gain is an outage at every threshold.
    sir = signal / interference if signal > 0 else math.ulp(0.0)
    return SirSample(sir, snapshot.serving_state)


@dataclass(frozen=True)
class DropResult:
    sir: SirSample
    n_bs: int
    serving_is_nearest: bool
    empty_draws: int


def run_drop(
    rng: np.random.Generator,
    gain_source: GainSource,
    params: SystemParams,
    region_radius: float = DEFAULT_REGION_RADIUS,
) -> DropResult:
    snapshot = generate_snapshot(rng, params, region_radius)
    return DropResult(
        sir=snapshot_sir(snapshot, gain_source, rng, params),
        n_bs=snapshot.n_bs,
        serving_is_nearest=bool(
            snapshot.serving_index == int(np.argmin(snapshot.distances))
        ),
        empty_draws=snapshot.empty_draws,
    )


def simulate_drops(
    n_drops: int,
    gain_source: GainSource,
    params: SystemParams,
    region_radius: float = DEFAULT_REGION_RADIUS,
    threads: int = 1,
) -> list[DropResult]:
    """Run ``n_drops`` independent drops, one child stream per drop."""
    if n_drops < 1:
        raise InvalidArgumentError(f"n_drops must be >= 1, got {n_drops}")
    rngs = spawn_rngs(params.rng_seed, n_drops)

    def run(rng: np.random.Generator) -> DropResult:
        return run_drop(rng, gain_source, params, region_radius)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, rngs))
    return [run(rng) for rng in rngs]


def empirical_coverage(
    n_drops: int,
    t_grid_db: Sequence[float],
    gain_source: GainSource,
    params: SystemParams,
    region_radius: float = DEFAULT_REGION_RADIUS,
    threads: int = 1,
) -> CoverageCurve:
    """Fraction of drops with ``SIR >= T`` for every threshold (in dB)."""
    if len(t_grid_db) == 0:
        raise InvalidArgumentError("threshold grid is empty")
    drops = simulate_drops(n_drops, gain_source, params, region_radius, threads)
    sir = np.array([d.sir.sir_linear for d in drops])

    thresholds = [float(t) for t in t_grid_db]
    coverages, stderr = [], []
    for t_db in thresholds:
        p = float(np.mean(sir >= db_to_linear(t_db)))
        coverages.append(p)
        stderr.append(math.sqrt(p * (1.0 - p) / n_drops))

    n_los = sum(d.sir.serving_state is LinkState.LOS for d in drops)
    n_free = sum(d.sir.interference_free for d in drops)
    empty = sum(d.empty_draws for d in drops)
    not_nearest = sum(not d.serving_is_nearest for d in drops)
    logger.info(
        "Simulated %d drops at %dx%d: LoS serving %.4f, not nearest %.4f, "
        "interference-free %d, empty redraws %d",
        n_drops,
        params.n_tx,
        params.n_rx,
        n_los / n_drops,
        not_nearest / n_drops,
        n_free,
        empty,
    )
    return CoverageCurve(
        thresholds_db=thresholds,
        coverages=coverages,
        method=CoverageMethod.MONTECARLO,
        gx_family=gain_source.gx.family
        if isinstance(gain_source, FittedGainSource)
        else None,
        params_snapshot=params,
        stderr=stderr,
        metadata={
            "n_drops": n_drops,
            "region_radius": region_radius,
            "los_association_fraction": n_los / n_drops,
            "not_nearest_fraction": not_nearest / n_drops,
            "interference_free": n_free,
            "empty_draws": empty,
            "mean_bs_count": float(np.mean([d.n_bs for d in drops])),
        },
    )

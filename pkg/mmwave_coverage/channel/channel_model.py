"""Cluster/subpath channel realizations, spatial signatures, and beam vectors.

Arrays are horizontal uniform linear arrays with half-wavelength spacing, so the
spatial signature of ``n`` elements towards angle ``theta`` has entries
``exp(j*pi*m*cos(theta))`` for ``m = 0..n-1``. Beams and channel matrices both
use the transpose pairing: a beam matched to ``theta`` gives
``w(theta)^T u(theta) = sqrt(n)``, and

    H = sum_kl g_kl * u_rx(aoa_kl) * u_tx(aod_kl)^T,  g_kl = sqrt(P_kl) e^{-j phi_kl}

so the received gain of beams (w_rx, w_tx) is ``|w_rx^T H w_tx|^2``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from mmwave_coverage.shared import (
    DEFAULT_CLUSTER_LAW,
    ClusterLaw,
    InvalidArgumentError,
    SystemParams,
)

logger = logging.getLogger(__name__)

TWO_PI: float = 2.0 * np.pi
POWER_SUM_TOL: float = 1e-12
# Below this |sin(x/2)| the array factor takes its limit value sqrt(n).
_DIRICHLET_EPS: float = 1e-9

FloatArray = NDArray[np.float64]
ComplexArray = NDArray[np.complex128]


@dataclass(frozen=True)
class ClusterRealization:
    """One random draw of clusters and subpaths.

    Per-cluster arrays have length ``cluster_count``; per-subpath arrays are
    flat, cluster by cluster, with ``subpath_counts[k]`` entries for cluster k.
    """

    subpath_counts: NDArray[np.int64]
    central_aoa: FloatArray
    central_aod: FloatArray
    angular_spread: FloatArray
    aoa: FloatArray
    aod: FloatArray
    power: FloatArray
    phase: FloatArray
    max_subpaths: int = field(default=DEFAULT_CLUSTER_LAW.max_subpaths, repr=False)
    spread_floor: float = field(default=DEFAULT_CLUSTER_LAW.spread_floor, repr=False)

    def __post_init__(self) -> None:
        k = self.cluster_count
        if k < 1:
            raise InvalidArgumentError("a realization needs at least one cluster")
        for name in ("central_aoa", "central_aod", "angular_spread"):
            if getattr(self, name).shape != (k,):
                raise InvalidArgumentError(f"{name} must have one entry per cluster")
        counts = self.subpath_counts
        if np.any(counts < 1) or np.any(counts > self.max_subpaths):
            raise InvalidArgumentError(
                f"subpath counts must lie in [1, {self.max_subpaths}]"
            )
        if np.any(self.angular_spread < self.spread_floor):
            raise InvalidArgumentError(
                f"angular spread below the floor {self.spread_floor}"
            )
        n_sub = int(counts.sum())
        for name in ("aoa", "aod", "power", "phase"):
            if getattr(self, name).shape != (n_sub,):
                raise InvalidArgumentError(f"{name} must have one entry per subpath")
        if np.any(self.power < 0) or np.any(self.power > 1):
            raise InvalidArgumentError("subpath powers must lie in [0, 1]")
        if abs(float(self.power.sum()) - 1.0) > POWER_SUM_TOL:
            raise InvalidArgumentError("subpath powers must sum to 1")

    @property
    def cluster_count(self) -> int:
        return int(self.subpath_counts.shape[0])

    @property
    def n_subpaths(self) -> int:
        return int(self.subpath_counts.sum())

    @property
    def strongest_subpath(self) -> int:
        """Flat index of the subpath with the largest power."""
        return int(np.argmax(self.power))

    @property
    def gains(self) -> ComplexArray:
        """Small-scale fading gains ``sqrt(P) * exp(-j*phi)``."""
        return np.sqrt(self.power) * np.exp(-1j * self.phase)


@dataclass(frozen=True)
class ClusterBatch:
    """Many realizations stored back to back.

    Subpaths of realization ``i`` occupy ``offsets[i]:offsets[i + 1]`` of the
    flat per-subpath arrays; clusters of realization ``i`` occupy
    ``cluster_offsets[i]:cluster_offsets[i + 1]`` of the per-cluster arrays.
    """

    cluster_offsets: NDArray[np.int64]
    offsets: NDArray[np.int64]
    subpath_counts: NDArray[np.int64]
    central_aoa: FloatArray
    central_aod: FloatArray
    angular_spread: FloatArray
    aoa: FloatArray
    aod: FloatArray
    power: FloatArray
    phase: FloatArray
    law: ClusterLaw = DEFAULT_CLUSTER_LAW

    @property
    def size(self) -> int:
        return int(self.offsets.shape[0] - 1)

    @property
    def owner(self) -> NDArray[np.int64]:
        """Realization index of every subpath."""
        return np.repeat(np.arange(self.size), np.diff(self.offsets))

    def realization(self, index: int) -> ClusterRealization:
        c0, c1 = self.cluster_offsets[index], self.cluster_offsets[index + 1]
        s0, s1 = self.offsets[index], self.offsets[index + 1]
        return ClusterRealization(
            subpath_counts=self.subpath_counts[c0:c1].copy(),
            central_aoa=self.central_aoa[c0:c1].copy(),
            central_aod=self.central_aod[c0:c1].copy(),
            angular_spread=self.angular_spread[c0:c1].copy(),
            aoa=self.aoa[s0:s1].copy(),
            aod=self.aod[s0:s1].copy(),
            power=self.power[s0:s1].copy(),
            phase=self.phase[s0:s1].copy(),
            max_subpaths=self.law.max_subpaths,
            spread_floor=self.law.spread_floor,
        )


def sample_cluster_batch(
    rng: np.random.Generator, size: int, law: ClusterLaw = DEFAULT_CLUSTER_LAW
) -> ClusterBatch:
    """Draw ``size`` independent realizations in one vectorized pass."""
    if size < 1:
        raise InvalidArgumentError("batch size must be >= 1")

    clusters = np.maximum(rng.poisson(law.mean_clusters, size=size), 1)
    n_clusters = int(clusters.sum())
    subpaths = rng.integers(1, law.max_subpaths + 1, size=n_clusters)
    central_aoa = rng.uniform(0.0, TWO_PI, size=n_clusters)
    central_aod = rng.uniform(0.0, TWO_PI, size=n_clusters)
    spread = np.maximum(
        rng.exponential(law.spread_mean, size=n_clusters), law.spread_floor
    )
    # U in (0, 1] keeps U^(tau - 1) finite and positive.
    u = 1.0 - rng.random(n_clusters)
    z = rng.normal(0.0, law.shadowing_std_db, size=n_clusters)

    n_sub = int(subpaths.sum())
    v = rng.uniform(0.0, law.subpath_excess, size=n_sub)
    phase = rng.uniform(0.0, TWO_PI, size=n_sub)

    cluster_of = np.repeat(np.arange(n_clusters), subpaths)
    cluster_start = np.concatenate(([0], np.cumsum(subpaths)[:-1]))
    # Subpath number l runs 1..L_k inside each cluster.
    l_index = np.arange(n_sub) - cluster_start[cluster_of] + 1
    sign = np.where(l_index % 2 == 0, 1.0, -1.0)
    half_spread = sign * spread[cluster_of] / 2.0
    aoa = np.mod(central_aoa[cluster_of] + half_spread, TWO_PI)
    aod = np.mod(central_aod[cluster_of] + half_spread, TWO_PI)

    raw = (
        u[cluster_of] ** (law.power_decay - 1.0)
        * 10.0 ** (-0.1 * z[cluster_of] + v)
        / subpaths[cluster_of]
    )
    cluster_offsets = np.concatenate(([0], np.cumsum(clusters))).astype(np.int64)
    offsets = np.concatenate(([0], np.cumsum(subpaths)[cluster_offsets[1:] - 1]))
    offsets = offsets.astype(np.int64)
    totals = np.add.reduceat(raw, offsets[:-1])
    owner = np.repeat(np.arange(size), np.diff(offsets))
    power = raw / totals[owner]

    return ClusterBatch(
        cluster_offsets=cluster_offsets,
        offsets=offsets,
        subpath_counts=subpaths.astype(np.int64),
        central_aoa=central_aoa,
        central_aod=central_aod,
        angular_spread=spread,
        aoa=aoa,
        aod=aod,
        power=power,
        phase=phase,
        law=law,
    )


def sample_cluster_realization(
    rng: np.random.Generator,
    params: SystemParams,
    law: ClusterLaw = DEFAULT_CLUSTER_LAW,
) -> ClusterRealization:
    """Draw one channel realization.

    The small-scale law does not depend on the link state or on ``params``; the
    argument is kept so callers pass the same context everywhere.
    """
    del params
    return sample_cluster_batch(rng, 1, law).realization(0)


def _check_antennas(n: int) -> None:
    if n < 1:
        raise InvalidArgumentError(f"antenna count must be >= 1, got {n}")


def spatial_signature(theta: float, n: int) -> ComplexArray:
    """Unnormalized ULA response ``exp(j*pi*m*cos(theta))``, ``m = 0..n-1``."""
    _check_antennas(n)
    m = np.arange(n)
    return np.exp(1j * np.pi * m * np.cos(theta))


def beamforming_vector(theta: float, n: int) -> ComplexArray:
    """Unit-norm beam matched to ``theta`` under the transpose pairing."""
    return np.conj(spatial_signature(theta, n)) / np.sqrt(n)


def channel_matrix(
    realization: ClusterRealization, params: SystemParams
) -> ComplexArray:
    """Build the ``n_rx x n_tx`` channel matrix of a realization."""
    u_rx = np.exp(
        1j * np.pi * np.outer(np.cos(realization.aoa), np.arange(params.n_rx))
    )
    u_tx = np.exp(
        1j * np.pi * np.outer(np.cos(realization.aod), np.arange(params.n_tx))
    )
    # (S, n_rx)^T @ diag(g) @ (S, n_tx) sums the rank-one terms.
    return (u_rx.T * realization.gains) @ u_tx


def array_factor(
    steer: FloatArray | float, theta: FloatArray | float, n: int
) -> ComplexArray:
    """``w(steer)^T u(theta)`` in closed form, broadcasting over angles.

    Equal to ``sum_m exp(j*m*x) / sqrt(n)`` with ``x = pi*(cos(theta) - cos(steer))``.
    """
    _check_antennas(n)
    theta = np.asarray(theta, dtype=float)
    steer = np.asarray(steer, dtype=float)
    x = np.pi * (np.cos(theta) - np.cos(steer))
    half = x / 2.0
    denom = np.sin(half)
    aligned = np.abs(denom) < _DIRICHLET_EPS
    safe = np.where(aligned, 1.0, denom)
    value = np.exp(1j * (n - 1) * half) * np.sin(n * half) / safe
    # Every term equals one when x is a multiple of 2*pi.
    value = np.where(aligned, complex(n), value)
    return value / np.sqrt(n)

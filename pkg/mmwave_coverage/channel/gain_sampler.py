"""Monte Carlo samples of the aligned and misaligned beamforming gains.

The aligned gain ``G_o`` points both beams at the strongest subpath of the
serving link; the misaligned gain ``G_x`` is the gain an interfering link sees
through beams steered at independent uniform angles. Every sample uses a fresh
channel realization.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from mmwave_coverage.shared import (
    DEFAULT_CLUSTER_LAW,
    ClusterLaw,
    GainKind,
    InvalidArgumentError,
    MmwaveError,
    NonFiniteSampleError,
    OutputError,
    SystemParams,
    chunk_sizes,
    spawn_rngs,
)

from .channel_model import (
    TWO_PI,
    ClusterBatch,
    ClusterRealization,
    array_factor,
    beamforming_vector,
    channel_matrix,
    sample_cluster_batch,
)

logger = logging.getLogger(__name__)

# Realizations per RNG stream. Part of the seeding contract: changing it changes
# every seeded sample set.
SAMPLES_PER_STREAM: int = 8192
_BOUND_SLACK: float = 1e-9


@dataclass(frozen=True)
class GainSampleSet:
    """Simulated gains of one kind for one antenna configuration."""

    kind: GainKind
    n_tx: int
    n_rx: int
    samples: NDArray[np.float64]
    seed: int

    def __post_init__(self) -> None:
        if self.n_tx < 1 or self.n_rx < 1:
            raise InvalidArgumentError("antenna counts must be >= 1")
        if not np.all(np.isfinite(self.samples)):
            raise NonFiniteSampleError("gain samples must be finite")
        if np.any(self.samples < 0):
            raise InvalidArgumentError("gain samples must be nonnegative")

    @property
    def max_array_gain(self) -> float:
        return float(self.n_tx * self.n_rx)

    @property
    def max_gain_mass(self) -> float:
        """Share of samples sitting at ``n_tx * n_rx``, the single-subpath value."""
        at_max = np.isclose(self.samples, self.max_array_gain, rtol=1e-9, atol=0.0)
        return float(np.mean(at_max))

    def __len__(self) -> int:
        return int(self.samples.shape[0])


def _gain(
    realization: ClusterRealization,
    params: SystemParams,
    rx_steer: float,
    tx_steer: float,
) -> float:
    h = channel_matrix(realization, params)
    w_rx = beamforming_vector(rx_steer, params.n_rx)
    w_tx = beamforming_vector(tx_steer, params.n_tx)
    return float(np.abs(w_rx @ h @ w_tx) ** 2)


def aligned_gain(realization: ClusterRealization, params: SystemParams) -> float:
    """Gain with both beams matched to the strongest subpath."""
    s = realization.strongest_subpath
    return _gain(realization, params, realization.aoa[s], realization.aod[s])


def misaligned_gain(
    realization: ClusterRealization, rng: np.random.Generator, params: SystemParams
) -> float:
    """Gain with both beams steered at independent uniform angles."""
    tx_steer, rx_steer = rng.uniform(0.0, TWO_PI, size=2)
    return _gain(realization, params, rx_steer, tx_steer)


def batch_gains(
    batch: ClusterBatch,
    rx_steer: NDArray[np.float64],
    tx_steer: NDArray[np.float64],
    params: SystemParams,
) -> NDArray[np.float64]:
    """``|w_rx^T H w_tx|^2`` for every realization of ``batch``.

    ``rx_steer``/``tx_steer`` hold one steering angle per realization. Uses the
    rank-one structure of ``H``: each subpath contributes
    ``g * AF_rx * AF_tx``.
    """
    owner = batch.owner
    g = np.sqrt(batch.power) * np.exp(-1j * batch.phase)
    terms = (
        g
        * array_factor(rx_steer[owner], batch.aoa, params.n_rx)
        * array_factor(tx_steer[owner], batch.aod, params.n_tx)
    )
    amplitude = np.add.reduceat(terms, batch.offsets[:-1])
    gains = np.abs(amplitude) ** 2

    # Cauchy-Schwarz: |sum g AF AF|^2 <= n_tx n_rx (sum sqrt(P))^2.
    root_power = np.add.reduceat(np.sqrt(batch.power), batch.offsets[:-1])
    bound = params.max_array_gain * root_power**2
    if np.any(gains > bound * (1.0 + _BOUND_SLACK)):
        raise MmwaveError("gain sample exceeds the array-gain bound")
    return gains


def _strongest_per_realization(batch: ClusterBatch) -> NDArray[np.int64]:
    peak = np.maximum.reduceat(batch.power, batch.offsets[:-1])
    hits = np.flatnonzero(batch.power == peak[batch.owner])
    # First strongest subpath of each realization.
    _, first = np.unique(batch.owner[hits], return_index=True)
    return hits[first]


def sample_gains(
    kind: GainKind,
    n_samples: int,
    params: SystemParams,
    rng: np.random.Generator,
    law: ClusterLaw = DEFAULT_CLUSTER_LAW,
) -> NDArray[np.float64]:
    """Draw ``n_samples`` i.i.d. gains from a single stream."""
    if n_samples < 1:
        raise InvalidArgumentError(f"n_samples must be >= 1, got {n_samples}")
    batch = sample_cluster_batch(rng, n_samples, law)
    if kind is GainKind.ALIGNED:
        strongest = _strongest_per_realization(batch)
        rx_steer, tx_steer = batch.aoa[strongest], batch.aod[strongest]
    else:
        steer = rng.uniform(0.0, TWO_PI, size=(n_samples, 2))
        tx_steer, rx_steer = steer[:, 0], steer[:, 1]
    return batch_gains(batch, rx_steer, tx_steer, params)


def sample_gain_set(
    kind: GainKind,
    n_samples: int,
    params: SystemParams,
    threads: int = 1,
    law: ClusterLaw = DEFAULT_CLUSTER_LAW,
) -> GainSampleSet:
    """Draw a reproducible gain sample set seeded by ``params.rng_seed``.

    Work is split into fixed-size chunks, each with its own child stream, so
    the result does not depend on ``threads``.
    """
    if n_samples < 1:
        raise InvalidArgumentError(f"n_samples must be >= 1, got {n_samples}")
    sizes = chunk_sizes(n_samples, SAMPLES_PER_STREAM)
    rngs = spawn_rngs(params.rng_seed, len(sizes))
    logger.info(
        "Sampling %d %s gains at %dx%d (%d streams, %d threads)",
        n_samples,
        kind.value,
        params.n_tx,
        params.n_rx,
        len(sizes),
        threads,
    )

    def run(job: tuple[int, np.random.Generator]) -> NDArray[np.float64]:
        size, rng = job
        return sample_gains(kind, size, params, rng, law)

    jobs = list(zip(sizes, rngs, strict=True))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(job) for job in jobs]

    return GainSampleSet(
        kind=kind,
        n_tx=params.n_tx,
        n_rx=params.n_rx,
        samples=np.concatenate(parts),
        seed=params.rng_seed,
    )


def write_gain_csv(sample_set: GainSampleSet, path: str | Path) -> Path:
    """Write a sample set as CSV: one metadata comment line, then one gain per row."""
    path = Path(path)
    header = (
        f"# kind={sample_set.kind.value},n_tx={sample_set.n_tx},"
        f"n_rx={sample_set.n_rx},seed={sample_set.seed}\n"
    )
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as file:
            file.write(header)
            pd.DataFrame({"gain": sample_set.samples}).to_csv(
                file, index=False, float_format="%.17g", lineterminator="\n"
            )
    except OSError as e:
        raise OutputError(f"Failed to write gain samples to {path}: {e}") from e
    return path


def read_gain_csv(path: str | Path) -> GainSampleSet:
    """Read a sample set written by :func:`write_gain_csv`."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as file:
            first = file.readline().strip()
            frame = pd.read_csv(file)
    except OSError as e:
        raise OutputError(f"Failed to read gain samples from {path}: {e}") from e

    if not first.startswith("#"):
        raise InvalidArgumentError(f"{path}: missing metadata comment line")
    meta = dict(item.split("=", 1) for item in first.lstrip("# ").split(","))
    try:
        return GainSampleSet(
            kind=GainKind(meta["kind"]),
            n_tx=int(meta["n_tx"]),
            n_rx=int(meta["n_rx"]),
            samples=frame["gain"].to_numpy(dtype=float),
            seed=int(meta["seed"]),
        )
    except (KeyError, ValueError) as e:
        raise InvalidArgumentError(f"{path}: malformed gain sample file: {e}") from e

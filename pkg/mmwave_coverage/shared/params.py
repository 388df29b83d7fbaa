"""System and channel-law parameters.

``SystemParams`` holds the network-level constants (path-loss law, LoS decay,
BS density, antenna counts). ``ClusterLaw`` holds the constants of the
cluster/subpath channel law. Defaults are the 28 GHz measurement values.
"""

from __future__ import annotations

from dataclasses import dataclass

from pydantic import ConfigDict, Field

from .base_models import BaseModelWithDefaults
from .constants import LinkState


class SystemParams(BaseModelWithDefaults):
    model_config = ConfigDict(extra="forbid", frozen=True)

    carrier_freq: float = Field(default=2.8e10, gt=0, description="Hz")
    bs_density: float = Field(default=1e-4, gt=0, description="BS per m^2")
    los_decay: float = Field(default=0.0149, gt=0, description="1/m")
    alpha_los: float = Field(default=2.0, gt=0)
    alpha_nlos: float = Field(default=2.92, gt=0)
    beta_los: float = Field(default=10**-7.2, gt=0)
    beta_nlos: float = Field(default=10**-6.14, gt=0)
    n_tx: int = Field(default=256, ge=1)
    n_rx: int = Field(default=64, ge=1)
    rng_seed: int = Field(default=0, ge=0, lt=2**64)

    def alpha(self, state: LinkState) -> float:
        return self.alpha_los if state is LinkState.LOS else self.alpha_nlos

    def beta(self, state: LinkState) -> float:
        return self.beta_los if state is LinkState.LOS else self.beta_nlos

    @property
    def max_array_gain(self) -> float:
        """Matched gain of a single unit-power path: ``n_tx * n_rx``."""
        return float(self.n_tx * self.n_rx)

    def with_antennas(self, n_tx: int, n_rx: int) -> SystemParams:
        return self.model_copy(update={"n_tx": n_tx, "n_rx": n_rx})

    def with_seed(self, rng_seed: int) -> SystemParams:
        return self.model_copy(update={"rng_seed": rng_seed})


@dataclass(frozen=True)
class ClusterLaw:
    """Sampling constants of the cluster/subpath channel law."""

    mean_clusters: float = 1.8
    max_subpaths: int = 10
    # Mean of the exponential angular spread, radians.
    spread_mean: float = 0.178
    spread_floor: float = 0.0122
    power_decay: float = 2.8
    shadowing_std_db: float = 4.0
    subpath_excess: float = 0.6

    def __post_init__(self) -> None:
        if self.mean_clusters <= 0:
            raise ValueError("mean_clusters must be positive")
        if self.max_subpaths < 1:
            raise ValueError("max_subpaths must be >= 1")
        if self.spread_mean <= 0 or self.spread_floor < 0:
            raise ValueError("spread_mean must be positive, spread_floor >= 0")
        if self.power_decay <= 0 or self.shadowing_std_db < 0:
            raise ValueError("power_decay must be positive, shadowing std >= 0")
        if self.subpath_excess < 0:
            raise ValueError("subpath_excess must be >= 0")


DEFAULT_CLUSTER_LAW = ClusterLaw()

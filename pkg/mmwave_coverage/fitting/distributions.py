"""Parametric gain distributions: evaluation, inverse-CDF sampling, JSON form.

Each family maps onto a frozen ``scipy.stats`` distribution:

=============  ================  =======================================
family         parameters        scipy.stats
=============  ================  =======================================
exponential    rate              ``expon(scale=1/rate)``
loglogistic    a (scale), b      ``fisk(c=b, scale=a)``
burr           c, k              ``burr12(c=c, d=k)``
lognormal      sigma, mu         ``lognorm(s=sigma, scale=exp(mu))``
nakagami       m, g              ``nakagami(nu=m, scale=sqrt(g))``
=============  ================  =======================================

Densities that diverge at ``y -> 0+`` (log-logistic ``b < 1``, Burr ``c < 1``,
Nakagami ``m < 1/2``) are reported as 0 at exactly ``y = 0``; quadrature in
other modules never samples the origin.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import stats
from scipy.special import gamma as gamma_fn

from mmwave_coverage.shared import (
    Family,
    InvalidArgumentError,
    OutputError,
)

PARAM_NAMES: dict[Family, tuple[str, str] | tuple[str]] = {
    Family.EXPONENTIAL: ("rate",),
    Family.LOGLOGISTIC: ("a", "b"),
    Family.BURR: ("c", "k"),
    Family.LOGNORMAL: ("sigma", "mu"),
    Family.NAKAGAMI: ("m", "g"),
}
# Parameters allowed to take any real value.
_UNBOUNDED_PARAMS: frozenset[str] = frozenset({"mu"})


@dataclass(frozen=True)
class FittedDist:
    """A distribution family, its parameters and an optional support cap."""

    family: Family
    params: dict[str, float] = field(hash=False)
    truncation_cap: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        expected = PARAM_NAMES[self.family]
        if set(self.params) != set(expected):
            raise InvalidArgumentError(
                f"{self.family.value} needs parameters {list(expected)}, "
                f"got {sorted(self.params)}"
            )
        clean = {name: float(self.params[name]) for name in expected}
        for name, value in clean.items():
            if not math.isfinite(value):
                raise InvalidArgumentError(f"parameter {name} must be finite")
            if name not in _UNBOUNDED_PARAMS and value <= 0:
                raise InvalidArgumentError(f"parameter {name} must be positive")
        object.__setattr__(self, "params", clean)
        if self.truncation_cap is not None:
            cap = float(self.truncation_cap)
            if not cap > 0 or not math.isfinite(cap):
                raise InvalidArgumentError("truncation_cap must be positive and finite")
            object.__setattr__(self, "truncation_cap", cap)

    def __getitem__(self, name: str) -> float:
        return self.params[name]

    @property
    def frozen(self) -> Any:
        """The equivalent frozen ``scipy.stats`` distribution."""
        p = self.params
        match self.family:
            case Family.EXPONENTIAL:
                return stats.expon(scale=1.0 / p["rate"])
            case Family.LOGLOGISTIC:
                return stats.fisk(c=p["b"], scale=p["a"])
            case Family.BURR:
                return stats.burr12(c=p["c"], d=p["k"])
            case Family.LOGNORMAL:
                return stats.lognorm(s=p["sigma"], scale=math.exp(p["mu"]))
            case Family.NAKAGAMI:
                return stats.nakagami(nu=p["m"], scale=math.sqrt(p["g"]))
        raise InvalidArgumentError(f"unknown family {self.family}")

    def pdf_at_zero(self) -> float:
        """Density at exactly ``y = 0`` (0 where it diverges)."""
        p = self.params
        match self.family:
            case Family.EXPONENTIAL:
                return p["rate"]
            case Family.LOGLOGISTIC:
                return 1.0 / p["a"] if p["b"] == 1.0 else 0.0
            case Family.BURR:
                return p["k"] if p["c"] == 1.0 else 0.0
            case Family.NAKAGAMI:
                if p["m"] == 0.5:
                    return 2.0 * 0.5**0.5 / (gamma_fn(0.5) * p["g"] ** 0.5)
                return 0.0
        return 0.0

    def with_cap(self, truncation_cap: float | None) -> FittedDist:
        return FittedDist(self.family, dict(self.params), truncation_cap)

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.family.value,
            "params": dict(self.params),
            "truncation_cap": self.truncation_cap,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> FittedDist:
        try:
            return cls(
                family=Family(data["family"]),
                params=dict(data["params"]),
                truncation_cap=data.get("truncation_cap"),
            )
        except (KeyError, TypeError) as e:
            raise InvalidArgumentError(f"malformed distribution object: {e}") from e
        except ValueError as e:
            raise InvalidArgumentError(str(e)) from e


def _as_support(y: ArrayLike) -> NDArray[np.float64]:
    arr = np.asarray(y, dtype=float)
    if np.any(np.isnan(arr)):
        raise InvalidArgumentError("evaluation point must not be NaN")
    if np.any(arr < 0):
        raise InvalidArgumentError("evaluation point must be >= 0")
    return arr


def _unwrap(arr: NDArray[np.float64], like: ArrayLike) -> Any:
    return float(arr) if np.ndim(like) == 0 else arr


def pdf_eval(dist: FittedDist, y: ArrayLike) -> Any:
    """Density at ``y >= 0``; scalar in, scalar out."""
    arr = _as_support(y)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.asarray(dist.frozen.pdf(arr), dtype=float)
    out = np.where(arr == 0, dist.pdf_at_zero(), out)
    return _unwrap(out, y)


def logpdf_eval(dist: FittedDist, y: ArrayLike) -> Any:
    arr = _as_support(y)
    with np.errstate(divide="ignore"):
        out = np.asarray(dist.frozen.logpdf(arr), dtype=float)
    return _unwrap(out, y)


def cdf_eval(dist: FittedDist, y: ArrayLike) -> Any:
    """Closed-form CDF of the untruncated law at ``y >= 0``."""
    arr = _as_support(y)
    out = np.asarray(dist.frozen.cdf(arr), dtype=float)
    out = np.where(arr == 0, 0.0, out)
    return _unwrap(out, y)


def quantile(dist: FittedDist, p: ArrayLike) -> Any:
    """Inverse CDF of the untruncated law."""
    arr = np.asarray(p, dtype=float)
    if np.any((arr < 0) | (arr > 1)) or np.any(np.isnan(arr)):
        raise InvalidArgumentError("probabilities must lie in [0, 1]")
    return _unwrap(np.asarray(dist.frozen.ppf(arr), dtype=float), p)


def sample(
    dist: FittedDist,
    rng: np.random.Generator,
    size: int,
    cap: float | None = None,
) -> NDArray[np.float64]:
    """Inverse-CDF draws, restricted to ``(0, cap]`` when a cap is given.

    Drawing ``U * F(cap)`` and inverting gives the law conditioned on
    ``G <= cap``, the same law rejection at the cap produces.
    """
    if size < 0:
        raise InvalidArgumentError("size must be >= 0")
    u = rng.random(size)
    if cap is not None:
        u = u * float(dist.frozen.cdf(cap))
    draws = np.asarray(dist.frozen.ppf(u), dtype=float)
    if cap is not None:
        draws = np.minimum(draws, cap)
    return draws


def fractional_moment(dist: FittedDist, order: float) -> float:
    """``E[G^order]`` of the untruncated law (``inf`` when it diverges)."""
    p = dist.params
    match dist.family:
        case Family.EXPONENTIAL:
            return math.gamma(1.0 + order) / p["rate"] ** order
        case Family.LOGLOGISTIC:
            if order >= p["b"]:
                return math.inf
            t = math.pi * order / p["b"]
            return p["a"] ** order * t / math.sin(t)
        case Family.BURR:
            if order >= p["c"] * p["k"]:
                return math.inf
            return math.exp(
                math.lgamma(1 + order / p["c"])
                + math.lgamma(p["k"] - order / p["c"])
                - math.lgamma(p["k"])
            )
        case Family.LOGNORMAL:
            return math.exp(order * p["mu"] + 0.5 * (order * p["sigma"]) ** 2)
        case Family.NAKAGAMI:
            half = order / 2.0
            return math.exp(
                math.lgamma(p["m"] + half)
                - math.lgamma(p["m"])
                + half * math.log(p["g"] / p["m"])
            )
    raise InvalidArgumentError(f"unknown family {dist.family}")


def write_dist_json(dist: FittedDist, path: str | Path, **extra: Any) -> Path:
    """Write ``dist`` (plus optional report fields) as a JSON object."""
    path = Path(path)
    payload = dist.to_dict() | extra
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise OutputError(f"Failed to write distribution to {path}: {e}") from e
    return path


def read_dist_json(path: str | Path) -> FittedDist:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise OutputError(f"Failed to read distribution from {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InvalidArgumentError(f"{path}: invalid JSON: {e}") from e
    return FittedDist.from_dict(data)

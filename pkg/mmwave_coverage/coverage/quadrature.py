"""Composite Gauss-Legendre rules on linear and logarithmic panels.

The coverage integrals are evaluated on fixed node sets so one set of nodes
serves a whole vector of integrands.
"""

from __future__ import annotations

import math
from functools import cache

import numpy as np
from numpy.polynomial import legendre
from numpy.typing import NDArray
from scipy import special

FloatArray = NDArray[np.float64]


@cache
def _reference_rule(order: int) -> tuple[FloatArray, FloatArray]:
    nodes, weights = legendre.leggauss(order)
    return nodes, weights


def panel_rule(
    lo: float, hi: float, n_panels: int, order: int
) -> tuple[FloatArray, FloatArray]:
    """Nodes and weights for ``integral_lo^hi f(x) dx`` on equal panels."""
    if not hi > lo:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if n_panels < 1 or order < 1:
        raise ValueError("n_panels and order must be >= 1")
    ref_x, ref_w = _reference_rule(order)
    edges = np.linspace(lo, hi, n_panels + 1)
    half = np.diff(edges) / 2.0
    mid = edges[:-1] + half
    nodes = (mid[:, None] + half[:, None] * ref_x[None, :]).ravel()
    weights = (half[:, None] * ref_w[None, :]).ravel()
    return nodes, weights


def width_rule(
    lo: float, hi: float, panel_width: float, order: int
) -> tuple[FloatArray, FloatArray]:
    """Like :func:`panel_rule`, with panels no wider than ``panel_width``."""
    n_panels = max(1, math.ceil((hi - lo) / panel_width))
    return panel_rule(lo, hi, n_panels, order)


def log_rule(
    lo: float, hi: float, panel_width: float, order: int
) -> tuple[FloatArray, FloatArray]:
    """Nodes and weights for ``integral_lo^hi f(x) dx`` with panels in ``ln x``.

    ``panel_width`` is measured in e-folds. The Jacobian ``x`` is folded into
    the weights.
    """
    if not 0 < lo < hi:
        raise ValueError(f"log panels need 0 < lo < hi, got [{lo}, {hi}]")
    t, w = width_rule(math.log(lo), math.log(hi), panel_width, order)
    x = np.exp(t)
    return x, w * x


def upper_incomplete_gamma(s: float, x: FloatArray | float) -> FloatArray:
    """Non-regularized ``Gamma(s, x)`` for any real ``s`` and ``x > 0``.

    Negative orders use ``Gamma(s, x) = (Gamma(s + 1, x) - x^s e^-x) / s``.
    """
    x = np.asarray(x, dtype=float)
    if s > 0:
        return special.gamma(s) * special.gammaincc(s, x)
    if s == 0:
        return special.exp1(x)
    return (upper_incomplete_gamma(s + 1.0, x) - x**s * np.exp(-x)) / s

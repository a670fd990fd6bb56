"""Quadrature rules used by the bath integrals.

Two building blocks:

* :func:`tanh_sinh` -- nested double-exponential rule on [0, 1], tolerant of
  algebraic endpoint behaviour at 0.
* :class:`PanelRule` -- paired Gauss-Legendre rules (orders ``n_hi`` and
  ``n_lo``) on equal-width panels; the order difference gives the error
  estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

_HALF_PI = math.pi / 2

#: Node range in the tanh-sinh variable; the smallest abscissa is ~1e-37.
TS_U_MAX = 4.0


class QuadratureError(ArithmeticError):
    """Raised when an integral's error estimate stays above tolerance."""

    def __init__(self, message: str, estimate: float = float("nan"), **context):
        super().__init__(message)
        self.estimate = estimate
        self.context = context


@lru_cache(maxsize=None)
def _ts_level(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Abscissae/weights on [0, 1] that are new at ``level`` (step 2**-level).

    Level 0 holds every integer multiple of h=1; higher levels hold only the
    odd multiples, so summing levels 0..k with weight h_k gives the level-k rule.
    """
    h = 2.0 ** -level
    n = int(TS_U_MAX / h)
    k = np.arange(-n, n + 1)
    if level > 0:
        k = k[k % 2 == 1]
    u = k * h
    v = _HALF_PI * np.sinh(u)
    # x = (1 + tanh v)/2 written to stay accurate as x -> 0.
    x = 1.0 / (1.0 + np.exp(-2.0 * v))
    w = _HALF_PI * np.cosh(u) / (2.0 * np.cosh(v) ** 2)
    return x, w


def tanh_sinh(
    f: Callable[[np.ndarray], np.ndarray],
    rtol: float,
    atol: float = 0.0,
    max_level: int = 9,
    min_level: int = 3,
) -> tuple[float, float]:
    """Integrate a vectorised ``f`` over [0, 1].

    Returns ``(value, error_estimate)``; the estimate is the change between
    the last two levels. Stops once it is below ``max(rtol*|value|, atol)``.
    """
    raw = 0.0
    value = est = math.inf
    previous = None
    for level in range(max_level + 1):
        x, w = _ts_level(level)
        raw += float(np.dot(w, f(x)))
        value = raw * 2.0 ** -level
        if previous is not None:
            est = abs(value - previous)
            if level >= min_level and est <= max(rtol * abs(value), atol):
                break
        previous = value
    return value, est


@lru_cache(maxsize=None)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


@dataclass(frozen=True)
class PanelRule:
    """Equal panels of width ``width`` starting at ``start``.

    ``nodes_hi``/``nodes_lo`` have shape (n_panels, n) and the matching
    ``weights_*`` already include the panel Jacobian.
    """

    start: float
    width: float
    n_panels: int
    n_hi: int = 12
    n_lo: int = 8

    @property
    def centers(self) -> np.ndarray:
        return self.start + self.width * (np.arange(self.n_panels) + 0.5)

    def offsets(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        x, w = _legendre(n)
        return 0.5 * self.width * x, 0.5 * self.width * w

    def nodes(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        d, w = self.offsets(n)
        return self.centers[:, None] + d[None, :], np.broadcast_to(w, (self.n_panels, n))

    @property
    def end(self) -> float:
        return self.start + self.width * self.n_panels


def panel_sums(rule: PanelRule, f: Callable[[np.ndarray], np.ndarray]) -> tuple[float, float]:
    """Integrate ``f`` over the panels; returns ``(value, error_estimate)``."""
    x_hi, w_hi = rule.nodes(rule.n_hi)
    x_lo, w_lo = rule.nodes(rule.n_lo)
    hi = np.sum(w_hi * f(x_hi), axis=1)
    lo = np.sum(w_lo * f(x_lo), axis=1)
    return float(hi.sum()), float(np.abs(hi - lo).sum())

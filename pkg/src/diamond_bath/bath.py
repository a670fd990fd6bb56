"""Thermal bosonic bath: spectral density and decoherence factors.

The bath enters the spin dynamics only through two real functions of time,
the decoherence exponent ``gamma(t) >= 0`` and the bath-induced phase
``delta(t) <= 0``. Both are integrals over the spectral density

    J(w) = lam * omega_c**(1 - s) * w**s * exp(-w / omega_c)

and are evaluated here by quadrature. The phase integrand is written as
``sin(w t) - w t`` rather than as a sine integral minus its closed-form
linear drift, which would cancel catastrophically at small ``t``.
"""

from __future__ import annotations

import dataclasses
import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .quadrature import PanelRule, QuadratureError, tanh_sinh

DEFAULT_RTOL = 1e-8
DEFAULT_ATOL = 1e-12
MAX_REFINEMENTS = 3


@dataclass(frozen=True)
class BathParams:
    """Spin-bath coupling ``lam``, Ohmicity ``s``, cut-off ``omega_c``, inverse temperature ``beta``."""

    lam: float
    s: float
    omega_c: float
    beta: float

    def __post_init__(self):
        for name in ("lam", "s", "omega_c", "beta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"BathParams.{name} must be finite")
        if self.lam < 0:
            raise ValueError(f"coupling lam must be >= 0, got {self.lam}")
        if self.s <= 0:
            raise ValueError(f"Ohmicity s must be > 0, got {self.s}")
        if self.omega_c <= 0:
            raise ValueError(f"cut-off omega_c must be > 0, got {self.omega_c}")
        if self.beta <= 0:
            raise ValueError(f"inverse temperature beta must be > 0, got {self.beta}")

    @property
    def regime(self) -> str:
        if self.s < 1:
            return "sub-ohmic"
        if self.s == 1:
            return "ohmic"
        return "super-ohmic"

    @property
    def omega_max(self) -> float:
        """Upper integration limit; the discarded tail is below exp(-50)."""
        return self.omega_c * max(50.0, 50.0 / self.s)

    def replace(self, **changes) -> "BathParams":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class DecoherenceFactors:
    gamma: float
    delta: float

    @property
    def z(self) -> complex:
        return complex(self.gamma, self.delta)


ZERO_FACTORS = DecoherenceFactors(0.0, 0.0)


def spectral_density(omega, bath: BathParams):
    """J(omega) for ``omega >= 0`` (scalar or array)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("spectral density is defined for omega >= 0")
    out = (
        bath.lam
        * bath.omega_c ** (1 - bath.s)
        * omega**bath.s
        * np.exp(-omega / bath.omega_c)
    )
    return out.item() if out.ndim == 0 else out


def coth_half(x: np.ndarray) -> np.ndarray:
    """coth(x/2) for x > 0 without overflow or cancellation."""
    x = np.asarray(x, dtype=float)
    small = x < 1e-4
    with np.errstate(over="ignore", divide="ignore"):
        big = 1.0 + 2.0 / np.expm1(np.where(small, 1.0, x))
        series = 2.0 / np.where(small, x, 1.0) + x / 6.0
    return np.where(small, series, big)


def sin_minus_x(x: np.ndarray) -> np.ndarray:
    """sin(x) - x without cancellation for small |x|."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 0.5
    y = np.where(small, x, 0.0)
    y2 = y * y
    series = 1.0
    for k in (210.0, 156.0, 110.0, 72.0, 42.0, 20.0):
        series = 1.0 - y2 / k * series
    return np.where(small, -y * y2 / 6.0 * series, np.sin(x) - x)


def _omega_coth(omega: np.ndarray, beta: float) -> np.ndarray:
    """omega * coth(beta*omega/2), with its limit 2/beta at omega = 0."""
    zero = omega == 0
    safe = np.where(zero, 1.0, omega)
    return np.where(zero, 2.0 / beta, safe * coth_half(beta * safe))


# --- panel layout -------------------------------------------------------------

def _base_width(t: float, omega_c: float) -> float:
    """Panel width: at most half an oscillation of cos(w t), at most omega_c.

    ``t`` is rounded up to a power of two so nearby times share one layout.
    """
    bucket = 2.0 ** math.ceil(math.log2(t))
    return min(math.pi / bucket, omega_c)


@dataclass(frozen=True)
class _Layout:
    rule: PanelRule
    # weight * coth(beta w/2) * w**(s-2) * exp(-w/omega_c), per order
    g_gamma: dict
    # weight * w**(s-2) * exp(-w/omega_c), per order
    g_sin: dict
    # per-panel sums of g_gamma, per order
    g_gamma_rows: dict
    # per-panel sums of g_sin * w, per order
    g_sin_x_rows: dict
    # (sum |g|, sum |g| * w) for g_gamma and g_sin at the high order; rounding floor
    round_gamma: tuple
    round_sin: tuple


@lru_cache(maxsize=16)
def _layout(s: float, omega_c: float, beta: float, width: float, omega_max: float) -> _Layout:
    n_panels = math.ceil((omega_max - width) / width)
    rule = PanelRule(width, (omega_max - width) / n_panels, n_panels)
    g_gamma, g_sin = {}, {}
    for n in (rule.n_hi, rule.n_lo):
        x, w = rule.nodes(n)
        base = w * x ** (s - 2.0) * np.exp(-x / omega_c)
        g_sin[n] = base
        g_gamma[n] = base * coth_half(beta * x)
    rows = {n: g.sum(axis=1) for n, g in g_gamma.items()}
    x_rows = {n: (g * rule.nodes(n)[0]).sum(axis=1) for n, g in g_sin.items()}
    x, _ = rule.nodes(rule.n_hi)
    mags = [np.abs(g[rule.n_hi]) for g in (g_gamma, g_sin)]
    rg, rs = [(float(m.sum()), float((m * x).sum())) for m in mags]
    return _Layout(rule, g_gamma, g_sin, rows, x_rows, rg, rs)


def _panel_integrals(layout: _Layout, t: float) -> tuple[float, float, float, float]:
    """Tail integrals of (1 - cos wt) and (sin wt - wt); returns (I_g, err_g, I_s, err_s)."""
    rule = layout.rule
    per_order = {}
    if rule.start * t >= 1.0:
        # cos(c + d) = cos c cos d - sin c sin d: trig per panel, not per node.
        cp, sp = np.cos(rule.centers * t), np.sin(rule.centers * t)
        for n in (rule.n_hi, rule.n_lo):
            d, _ = rule.offsets(n)
            cd, sd = np.cos(d * t), np.sin(d * t)
            gg, gs = layout.g_gamma[n], layout.g_sin[n]
            one_minus_cos = layout.g_gamma_rows[n] - (cp * (gg @ cd) - sp * (gg @ sd))
            sine = sp * (gs @ cd) + cp * (gs @ sd) - t * layout.g_sin_x_rows[n]
            per_order[n] = (one_minus_cos, sine)
    else:
        for n in (rule.n_hi, rule.n_lo):
            x, _ = rule.nodes(n)
            one_minus_cos = np.sum(layout.g_gamma[n] * 2.0 * np.sin(0.5 * x * t) ** 2, axis=1)
            sine = np.sum(layout.g_sin[n] * sin_minus_x(x * t), axis=1)
            per_order[n] = (one_minus_cos, sine)
    (g_hi, s_hi), (g_lo, s_lo) = per_order[rule.n_hi], per_order[rule.n_lo]
    # Node w carries absolute error ~eps*w, i.e. a phase error ~eps*w*t.
    eps = 4 * np.finfo(float).eps
    floor_g = eps * (layout.round_gamma[0] + t * layout.round_gamma[1])
    floor_s = eps * (layout.round_sin[0] + t * layout.round_sin[1])
    return (
        float(g_hi.sum()),
        float(np.abs(g_hi - g_lo).sum()) + floor_g,
        float(s_hi.sum()),
        float(np.abs(s_hi - s_lo).sum()) + floor_s,
    )


def _head_integrals(s, omega_c, beta, width, t, rtol, atol):
    """Integrals over [0, width] after substituting w = width * y**(1/s).

    The substitution absorbs the w**(s-1) endpoint behaviour, so the
    transformed integrands are bounded on [0, 1].
    """
    jac = width**s / s

    def omega(y):
        return width * y ** (1.0 / s)

    def f_gamma(y):
        w = omega(y)
        return 0.5 * t * t * np.sinc(w * t / (2 * math.pi)) ** 2 * _omega_coth(w, beta) * np.exp(-w / omega_c)

    def f_sin(y):
        w = omega(y)
        zero = w == 0
        ratio = sin_minus_x(w * t) / np.where(zero, 1.0, w)
        return np.where(zero, 0.0, ratio) * np.exp(-w / omega_c)

    i_g, e_g = tanh_sinh(f_gamma, rtol=rtol, atol=atol / jac)
    i_s, e_s = tanh_sinh(f_sin, rtol=rtol, atol=atol / jac)
    return jac * i_g, jac * e_g, jac * i_s, jac * e_s


def unit_factors(
    t: float,
    s: float,
    omega_c: float,
    beta: float,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> tuple[float, float]:
    """(gamma, delta) at unit coupling ``lam = 1``.

    Raises :class:`QuadratureError` when the estimated error is still above
    ``max(rtol*|value|, atol)`` after ``MAX_REFINEMENTS`` panel halvings.
    """
    if t == 0:
        return 0.0, 0.0
    prefactor = 0.25 * omega_c ** (1.0 - s)
    omega_max = omega_c * max(50.0, 50.0 / s)
    width = _base_width(t, omega_c)
    for refinement in range(MAX_REFINEMENTS + 1):
        head = _head_integrals(s, omega_c, beta, width, t, 0.01 * rtol, 0.01 * atol / prefactor)
        tail = _panel_integrals(_layout(s, omega_c, beta, width, omega_max), t)
        gam = prefactor * (head[0] + tail[0])
        delta = prefactor * (head[2] + tail[2])
        err_gam = prefactor * (head[1] + tail[1])
        err_delta = prefactor * (head[3] + tail[3])
        ok_gam = err_gam <= max(rtol * abs(gam), atol)
        ok_delta = err_delta <= max(rtol * abs(delta), atol)
        if ok_gam and ok_delta:
            return gam, delta
        width /= 2
    raise QuadratureError(
        f"decoherence integrals did not converge at t={t} "
        f"(s={s}, omega_c={omega_c}, beta={beta}): "
        f"error estimates gamma={err_gam:.3g}, delta={err_delta:.3g}",
        estimate=max(err_gam, err_delta),
        t=t,
        s=s,
        omega_c=omega_c,
        beta=beta,
    )


class FactorCache:
    """Thread-safe memo of unit-coupling factors keyed by (t, s, omega_c, beta, rtol).

    Factors are linear in ``lam``, so one entry serves every coupling.
    """

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._data)

    def unit(self, t, bath: BathParams, rtol=DEFAULT_RTOL, atol=DEFAULT_ATOL):
        key = (float(t), bath.s, bath.omega_c, bath.beta, rtol, atol)
        with self._lock:
            hit = self._data.get(key)
        if hit is not None:
            return hit
        value = unit_factors(t, bath.s, bath.omega_c, bath.beta, rtol, atol)
        with self._lock:
            # Idempotent: a concurrent writer stores the same value.
            self._data.setdefault(key, value)
        return value


def decoherence_factors(
    t: float,
    bath: BathParams,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    cache: FactorCache | None = None,
) -> DecoherenceFactors:
    """gamma(t) and delta(t) for ``bath`` by numerical quadrature."""
    if not math.isfinite(t) or t < 0:
        raise ValueError(f"time must be finite and >= 0, got {t}")
    if t == 0 or bath.lam == 0:
        return ZERO_FACTORS
    if cache is not None:
        g, d = cache.unit(t, bath, rtol, atol)
    else:
        g, d = unit_factors(t, bath.s, bath.omega_c, bath.beta, rtol, atol)
    return DecoherenceFactors(bath.lam * g, bath.lam * d)


def reference_factors(t: float, bath: BathParams) -> DecoherenceFactors:
    """Zero-temperature closed forms for s in {1, 2, 3}; a test oracle.

    Requires ``beta * omega_c >= 1e4`` so that coth(beta w/2) ~ 1 wherever
    the spectral density has weight.
    """
    if bath.s not in (1, 2, 3):
        raise ValueError(f"closed forms exist here only for s in {{1, 2, 3}}, got s={bath.s}")
    if bath.beta * bath.omega_c < 1e4:
        raise ValueError("reference_factors needs beta * omega_c >= 1e4 (zero temperature)")
    if t < 0:
        raise ValueError("time must be >= 0")
    lam, s, wc = bath.lam, bath.s, bath.omega_c
    x = wc * t
    if s == 1:
        g = lam / 8 * math.log1p(x * x)
        d = lam / 4 * (math.atan(x) - x)
    else:
        p = s - 1
        amp = (1 + x * x) ** (-p / 2)
        phase = p * math.atan(x)
        g = lam / 4 * math.gamma(p) * (1 - amp * math.cos(phase))
        d = lam / 4 * (math.gamma(p) * amp * math.sin(phase) - math.gamma(s) * x)
    return DecoherenceFactors(g, d)

"""Scenario description, the key-value config format, and figure presets.

Config grammar (one ``key = value`` per line, ``#`` starts a comment)::

    cluster.J = -1            # required: cluster.J, cluster.Jz, cluster.J0
    cluster.h = 0             # optional, default 0
    cluster.h_prime = 0       # optional, default 0
    bath.lambda = 0.01        # required: bath.lambda, bath.s, bath.omega_c, bath.beta
    grid.t_start = 0          # optional, default 0
    grid.t_end = 20           # required
    grid.n_points = 400       # required, >= 2
    initial.state = psi_I     # psi_I (default) or explicit
    initial.amplitudes = ...  # 16 comma-separated complex numbers when explicit;
                              # rescaled to unit norm
    sweep.param = s           # optional: s, lambda or beta
    sweep.values = 0.5, 1, 2  # required with sweep.param
    outputs = negativity, gamma, delta
    quad.rtol = 1e-8          # optional quadrature relative tolerance
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bath import DEFAULT_RTOL, BathParams
from .dynamics import psi_I
from .spin_model import ClusterParams

OUTPUTS = ("negativity", "gamma", "delta", "purity", "negativity_isolated")
SWEEP_PARAMS = {"s": "s", "lambda": "lam", "beta": "beta"}

_REQUIRED = {
    "cluster.J", "cluster.Jz", "cluster.J0",
    "bath.lambda", "bath.s", "bath.omega_c", "bath.beta",
    "grid.t_end", "grid.n_points",
}
_OPTIONAL = {
    "cluster.h", "cluster.h_prime", "grid.t_start",
    "initial.state", "initial.amplitudes",
    "sweep.param", "sweep.values", "outputs", "quad.rtol",
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class TimeGrid:
    t_start: float
    t_end: float
    n_points: int

    def __post_init__(self):
        if not self.t_start >= 0:
            raise ConfigError(f"grid.t_start must be >= 0, got {self.t_start}")
        if not self.t_end > self.t_start:
            raise ConfigError("grid.t_end must exceed grid.t_start")
        if self.n_points < 2:
            raise ConfigError(f"grid.n_points must be >= 2, got {self.n_points}")

    def values(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.n_points)


@dataclass(frozen=True)
class Sweep:
    param: str
    values: tuple[float, ...]

    def __post_init__(self):
        if self.param not in SWEEP_PARAMS:
            raise ConfigError(f"sweep.param must be one of {sorted(SWEEP_PARAMS)}, got {self.param!r}")
        if not self.values:
            raise ConfigError("sweep.values is empty")


@dataclass(frozen=True)
class Scenario:
    cluster: ClusterParams
    bath: BathParams
    grid: TimeGrid
    initial: str | tuple[complex, ...] = "psi_I"
    sweep: Sweep | None = None
    outputs: tuple[str, ...] = ("negativity", "gamma", "delta")
    rtol: float = DEFAULT_RTOL

    def __post_init__(self):
        unknown = [o for o in self.outputs if o not in OUTPUTS]
        if unknown or not self.outputs:
            raise ConfigError(f"outputs must be a non-empty subset of {OUTPUTS}, got {self.outputs}")
        if self.initial != "psi_I" and len(self.initial) != 16:
            raise ConfigError("explicit initial state needs 16 amplitudes")
        # Validates every sweep value against BathParams' constraints.
        self.baths()

    @property
    def is_psi_I(self) -> bool:
        return self.initial == "psi_I"

    def initial_state(self) -> np.ndarray:
        if self.is_psi_I:
            return psi_I()
        psi = np.array(self.initial, dtype=complex)
        return psi / np.linalg.norm(psi)

    def baths(self) -> list[tuple[float | None, BathParams]]:
        """(sweep value, bath) pairs in sweep order; one ``(None, bath)`` without a sweep."""
        if self.sweep is None:
            return [(None, self.bath)]
        name = SWEEP_PARAMS[self.sweep.param]
        out = []
        for v in self.sweep.values:
            try:
                out.append((v, self.bath.replace(**{name: v})))
            except ValueError as exc:
                raise ConfigError(f"invalid sweep value {self.sweep.param}={v}: {exc}") from None
        return out

    def replace(self, **changes) -> "Scenario":
        return dataclasses.replace(self, **changes)


def _floats(text: str, key: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"{key}: expected comma-separated numbers, got {text!r}") from None


def _names(text: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in text.split(",") if x.strip())


def parse_config(text: str) -> Scenario:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if key not in _REQUIRED | _OPTIONAL:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value
    missing = sorted(_REQUIRED - entries.keys())
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")

    def num(key, default=None):
        if key not in entries:
            return default
        try:
            return float(entries[key])
        except ValueError:
            raise ConfigError(f"{key}: not a number: {entries[key]!r}") from None

    try:
        cluster = ClusterParams(
            num("cluster.J"), num("cluster.Jz"), num("cluster.J0"),
            num("cluster.h", 0.0), num("cluster.h_prime", 0.0),
        )
        bath = BathParams(num("bath.lambda"), num("bath.s"), num("bath.omega_c"), num("bath.beta"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    n_points = num("grid.n_points")
    if n_points != int(n_points):
        raise ConfigError("grid.n_points must be an integer")
    grid = TimeGrid(num("grid.t_start", 0.0), num("grid.t_end"), int(n_points))

    state = entries.get("initial.state", "psi_I")
    if state == "psi_I":
        if "initial.amplitudes" in entries:
            raise ConfigError("initial.amplitudes given but initial.state is psi_I")
        initial = "psi_I"
    elif state == "explicit":
        try:
            amps = tuple(complex(x.strip().replace(" ", "")) for x in entries.get("initial.amplitudes", "").split(","))
        except ValueError:
            raise ConfigError("initial.amplitudes: expected 16 complex numbers like 0.25+0.1j") from None
        if len(amps) != 16 or not any(amps):
            raise ConfigError("initial.amplitudes must hold 16 numbers, not all zero")
        initial = amps
    else:
        raise ConfigError(f"initial.state must be psi_I or explicit, got {state!r}")

    sweep = None
    if "sweep.param" in entries:
        if "sweep.values" not in entries:
            raise ConfigError("sweep.param given without sweep.values")
        sweep = Sweep(entries["sweep.param"], _floats(entries["sweep.values"], "sweep.values"))
    elif "sweep.values" in entries:
        raise ConfigError("sweep.values given without sweep.param")

    kwargs = {}
    if "outputs" in entries:
        kwargs["outputs"] = _names(entries["outputs"])
    if "quad.rtol" in entries:
        kwargs["rtol"] = num("quad.rtol")
        if not kwargs["rtol"] > 0:
            raise ConfigError("quad.rtol must be > 0")
    return Scenario(cluster, bath, grid, initial, sweep, **kwargs)


def load_config(path: str | Path) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)


def format_config(scenario: Scenario) -> str:
    """Inverse of :func:`parse_config`."""
    c, b, g = scenario.cluster, scenario.bath, scenario.grid
    lines = [
        f"cluster.J = {c.J!r}", f"cluster.Jz = {c.Jz!r}", f"cluster.J0 = {c.J0!r}",
        f"cluster.h = {c.h!r}", f"cluster.h_prime = {c.h_prime!r}",
        f"bath.lambda = {b.lam!r}", f"bath.s = {b.s!r}",
        f"bath.omega_c = {b.omega_c!r}", f"bath.beta = {b.beta!r}",
        f"grid.t_start = {g.t_start!r}", f"grid.t_end = {g.t_end!r}", f"grid.n_points = {g.n_points}",
    ]
    if scenario.is_psi_I:
        lines.append("initial.state = psi_I")
    else:
        lines.append("initial.state = explicit")
        lines.append("initial.amplitudes = " + ", ".join(repr(complex(a)).strip("()") for a in scenario.initial))
    if scenario.sweep is not None:
        lines.append(f"sweep.param = {scenario.sweep.param}")
        lines.append("sweep.values = " + ", ".join(repr(v) for v in scenario.sweep.values))
    lines.append("outputs = " + ", ".join(scenario.outputs))
    lines.append(f"quad.rtol = {scenario.rtol!r}")
    return "\n".join(lines) + "\n"


# --- presets ------------------------------------------------------------------

@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    scenario: Scenario = field(repr=False)


_ANISO = ClusterParams(J=-1.0, Jz=1.0, J0=1.0)
_ISO = ClusterParams(J=1.0, Jz=1.0, J0=1.0)
_GRID = TimeGrid(0.0, 20.0, 400)
# The bath phase grows like Gamma(s) omega_c t; s = 6 needs dt ~ 0.01 to resolve it.
_S_GRID = TimeGrid(0.0, 20.0, 2001)
_OUT = ("negativity", "gamma", "delta", "negativity_isolated")
_S_VALUES = (0.5, 1.0, 2.0, 3.0, 4.0, 6.0)

PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        Preset(
            "fig2",
            "anisotropic J=-1, Jz=1, J0=1; lambda=0.01, beta=1, omega_c=20; sweep over Ohmicity s",
            Scenario(_ANISO, BathParams(0.01, 1.0, 20.0, 1.0), _S_GRID,
                     sweep=Sweep("s", _S_VALUES), outputs=_OUT),
        ),
        Preset(
            "fig3",
            "anisotropic J=-1, Jz=1, J0=1; s=2, beta=1, omega_c=20; sweep over coupling lambda; "
            "t up to 100 so the lambda=0.001 curve reaches its first maximum (t ~ 78)",
            Scenario(_ANISO, BathParams(0.01, 2.0, 20.0, 1.0), TimeGrid(0.0, 100.0, 1001),
                     sweep=Sweep("lambda", (0.001, 0.005, 0.01, 0.05)), outputs=_OUT),
        ),
        Preset(
            "fig4",
            "anisotropic J=-1, Jz=1, J0=1; lambda=0.01, omega_c=20; s=2 chosen here; "
            "sweep over inverse temperature beta",
            Scenario(_ANISO, BathParams(0.01, 2.0, 20.0, 1.0), _GRID,
                     sweep=Sweep("beta", (1.0, 0.5, 0.1)), outputs=_OUT),
        ),
        Preset(
            "fig5",
            "isotropic J=Jz=1, J0=1; lambda=0.01, beta=1, omega_c=20; sweep over Ohmicity s; "
            "negativity_isolated is the bath-free reference (identically 0)",
            Scenario(_ISO, BathParams(0.01, 1.0, 20.0, 1.0), _S_GRID,
                     sweep=Sweep("s", _S_VALUES), outputs=_OUT),
        ),
    )
}


def list_presets() -> list[tuple[str, str]]:
    return [(p.name, p.description) for p in PRESETS.values()]


def get_preset(name: str) -> Scenario:
    try:
        return PRESETS[name].scenario
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None

"""Run a :class:`~diamond_bath.config.Scenario` and write/read CSV tables."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bath import ZERO_FACTORS, FactorCache, decoherence_factors
from .config import Scenario
from .dynamics import evolve_reduced, purity, rho_ab_psiI
from .entanglement import negativity_general, negativity_isolated, negativity_psiI


@dataclass
class Table:
    columns: list[str]
    rows: list[tuple[float, ...]]

    def column(self, name: str) -> np.ndarray:
        k = self.columns.index(name)
        return np.array([r[k] for r in self.rows])

    def select(self, **where) -> "Table":
        keys = [(self.columns.index(name), value) for name, value in where.items()]
        return Table(self.columns, [r for r in self.rows if all(r[k] == v for k, v in keys)])


def _state(scenario: Scenario, t, bath, factors, psi):
    if scenario.is_psi_I:
        return rho_ab_psiI(t, scenario.cluster, factors)
    return evolve_reduced(t, scenario.cluster, bath, psi, factors=factors)


def _point(scenario: Scenario, t: float, bath, cache: FactorCache, psi, outputs) -> list[float]:
    factors = decoherence_factors(t, bath, rtol=scenario.rtol, cache=cache)
    # psi_I has closed forms (tested against the general path); rho is only built when needed.
    need_state = "purity" in outputs or ("negativity" in outputs and not scenario.is_psi_I)
    rho = _state(scenario, t, bath, factors, psi) if need_state else None
    values = []
    for name in outputs:
        if name == "negativity":
            if scenario.is_psi_I:
                values.append(negativity_psiI(t, scenario.cluster, factors))
            else:
                values.append(negativity_general(rho))
        elif name == "gamma":
            values.append(factors.gamma)
        elif name == "delta":
            values.append(factors.delta)
        elif name == "purity":
            values.append(purity(rho))
        elif name == "negativity_isolated":
            if scenario.is_psi_I:
                values.append(negativity_isolated(t, scenario.cluster))
            else:
                values.append(negativity_general(_state(scenario, t, bath, ZERO_FACTORS, psi)))
    return values


def _chunk(scenario: Scenario, outputs, t_values) -> list[list[list[float]]]:
    """Rows for every sweep value over ``t_values``; indexed [sweep][t]."""
    cache = FactorCache()
    psi = scenario.initial_state()
    return [
        [_point(scenario, float(t), bath, cache, psi, outputs) for t in t_values]
        for _, bath in scenario.baths()
    ]


def _split(values: np.ndarray, parts: int) -> list[np.ndarray]:
    return [c for c in np.array_split(values, parts) if len(c)]


def run_scenario(scenario: Scenario, jobs: int = 1, columns: list[str] | None = None) -> Table:
    """One row per (sweep value, t), ordered by sweep value then time.

    Columns: ``t``, the sweep parameter (if any), then the outputs. Work is
    split over ``jobs`` processes by time chunks; the result does not depend
    on ``jobs``.
    """
    outputs = tuple(columns) if columns else scenario.outputs
    if columns:
        scenario = scenario.replace(outputs=outputs)
    ts = scenario.grid.values()
    if jobs > 1:
        chunks = _split(ts, 4 * jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_chunk, [scenario] * len(chunks), [outputs] * len(chunks), chunks))
    else:
        parts = [_chunk(scenario, outputs, ts)]

    header = ["t"] + ([scenario.sweep.param] if scenario.sweep else []) + list(outputs)
    rows = []
    for k, (value, _) in enumerate(scenario.baths()):
        t_iter = iter(ts)
        for part in parts:
            for values in part[k]:
                t = float(next(t_iter))
                prefix = (t,) if value is None else (t, float(value))
                rows.append(prefix + tuple(float(v) for v in values))
    return Table(header, rows)


def write_csv(table: Table, fh) -> None:
    """Header row, then values in shortest round-trip decimal form."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([repr(v) for v in row])


def read_csv(fh) -> Table:
    reader = csv.reader(fh)
    columns = next(reader)
    return Table(columns, [tuple(float(x) for x in row) for row in reader])


def to_csv_string(table: Table) -> str:
    buf = io.StringIO()
    write_csv(table, buf)
    return buf.getvalue()

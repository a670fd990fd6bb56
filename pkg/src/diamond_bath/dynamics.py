"""Time-evolved spin density matrices.

Three routes to the central-pair state:

* :func:`evolve_full` builds the 16x16 spin density matrix and is reduced by
  :func:`reduce_to_ab`; it serves as the brute-force reference.
* :func:`evolve_reduced` sums over the side spins directly (4x4 only).
* :func:`rho_ab_psiI` is the closed form for the all-spins-along-+x start.

Density matrices are plain complex ``numpy`` arrays in the basis order of
:mod:`diamond_bath.spin_model`.
"""

from __future__ import annotations

import numpy as np

from .bath import BathParams, DecoherenceFactors, FactorCache, decoherence_factors
from .spin_model import (
    PAIR_MAGNETIZATION,
    ClusterParams,
    ab_propagator,
    full_propagator,
    total_magnetization,
)

STATE_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


def psi_I() -> np.ndarray:
    """All four spins polarised along +x: every amplitude equals 1/4."""
    return np.full(16, 0.25, dtype=complex)


def random_state(rng: np.random.Generator) -> np.ndarray:
    """Normalised random 16-amplitude state from 32 standard normals."""
    x = rng.standard_normal(32)
    psi = x[:16] + 1j * x[16:]
    return psi / np.linalg.norm(psi)


def check_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (16,):
        raise ValueError(f"a four-spin state has 16 amplitudes, got shape {psi.shape}")
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > STATE_TOL:
        raise ValueError(f"state is not normalised: sum |c|^2 = {norm!r}")
    return psi


def density_matrix_violations(rho: np.ndarray) -> list[str]:
    """Names of the density-matrix invariants that ``rho`` breaks."""
    bad = []
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        bad.append("hermitian")
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        bad.append("unit trace")
    herm = 0.5 * (rho + rho.conj().T)
    if np.linalg.eigvalsh(herm).min() < -PSD_TOL:
        bad.append("positive semidefinite")
    return bad


def is_density_matrix(rho: np.ndarray) -> bool:
    return not density_matrix_violations(rho)


def purity(rho: np.ndarray) -> float:
    """Tr rho^2."""
    return float(np.sum(np.abs(rho) ** 2))


def _resolve_factors(t, bath, factors, cache):
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    if factors is not None:
        return factors
    return decoherence_factors(t, bath, cache=cache)


def evolve_full(
    t: float,
    params: ClusterParams,
    bath: BathParams,
    initial,
    factors: DecoherenceFactors | None = None,
    cache: FactorCache | None = None,
) -> np.ndarray:
    """16x16 spin density matrix after tracing out the bath.

    ``factors`` may be passed to reuse already computed (gamma, delta).
    """
    c = check_state(initial)
    f = _resolve_factors(t, bath, factors, cache)
    M = total_magnetization()
    dM = M[:, None] - M[None, :]
    dM2 = (M**2)[:, None] - (M**2)[None, :]
    rho0 = np.outer(c, c.conj()) * np.exp(-(dM**2) * f.gamma - 1j * dM2 * f.delta)
    U = full_propagator(t, params)
    return U @ rho0 @ U.conj().T


def reduce_to_ab(rho16: np.ndarray) -> np.ndarray:
    """Partial trace over the side spins 1 and 2."""
    rho16 = np.asarray(rho16)
    if rho16.shape != (16, 16):
        raise ValueError(f"expected a 16x16 matrix, got {rho16.shape}")
    return np.einsum("ikjk->ij", rho16.reshape(4, 4, 4, 4))


def evolve_reduced(
    t: float,
    params: ClusterParams,
    bath: BathParams,
    initial,
    factors: DecoherenceFactors | None = None,
    cache: FactorCache | None = None,
) -> np.ndarray:
    """4x4 central-pair density matrix, summing over side spins directly."""
    c = check_state(initial).reshape(4, 4)  # [ab index, side index]
    f = _resolve_factors(t, bath, factors, cache)
    P = PAIR_MAGNETIZATION  # m_a + m_b
    R = PAIR_MAGNETIZATION  # m_1 + m_2
    dP = (P[:, None] - P[None, :])[:, :, None]
    dP2 = (P[:, None] ** 2 - P[None, :] ** 2)[:, :, None]
    Rk = R[None, None, :]
    phase = (
        -1j * params.J0 * t / 4 * dP * Rk
        - dP**2 * f.gamma
        - 1j * (dP2 + 2 * dP * Rk) * f.delta
    )
    terms = c[:, None, :] * c.conj()[None, :, :] * np.exp(phase)
    rho0 = terms.sum(axis=2)
    U = ab_propagator(t, params)
    return U @ rho0 @ U.conj().T


def rho_ab_psiI(t: float, params: ClusterParams, factors: DecoherenceFactors) -> np.ndarray:
    """Closed-form central-pair state for the :func:`psi_I` initial state."""
    g, d = factors.gamma, factors.delta
    z = factors.z
    A = np.exp(-1j * (params.Jz / 2 - params.J / 2) * t)
    B = np.cos(params.J0 * t + 8 * d)
    hp = np.exp(-1j * params.h_prime * t)
    a = (1 + B) / 8 * np.exp(-4 * z) * A * hp
    b = (1 + B) / 8 * np.exp(-4 * z.conjugate()) * A.conjugate() * hp
    c = 0.25 * np.exp(-16 * g) * B**2 * hp**2
    q = 0.25
    return np.array(
        [
            [q, a, a, c],
            [a.conjugate(), q, q, b],
            [a.conjugate(), q, q, b],
            [c.conjugate(), b.conjugate(), b.conjugate(), q],
        ],
        dtype=complex,
    )

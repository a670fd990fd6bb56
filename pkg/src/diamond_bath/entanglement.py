"""Negativity of the central spin pair.

:func:`negativity_general` (partial transpose + eigenvalues) is the
definition; the closed forms below are fast paths for the psi_I start and
for the isolated cluster, and are tested against it.
"""

from __future__ import annotations

import math

import numpy as np

from .bath import DecoherenceFactors
from .spin_model import ClusterParams

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
SQRT_CLAMP = 1e-14


def partial_transpose(rho: np.ndarray, spin: str = "b") -> np.ndarray:
    """Transpose the indices of one spin of a two-qubit matrix."""
    r = np.asarray(rho).reshape(2, 2, 2, 2)  # (a, b, a', b')
    if spin == "b":
        r = r.transpose(0, 3, 2, 1)
    elif spin == "a":
        r = r.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"spin must be 'a' or 'b', got {spin!r}")
    return r.reshape(4, 4)


def pt_eigenvalues(rho: np.ndarray, spin: str = "b") -> np.ndarray:
    """Ascending eigenvalues of the partial transpose."""
    pt = partial_transpose(rho, spin)
    return np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))


def negativity_general(rho: np.ndarray, spin: str = "b") -> float:
    """Sum of |negative eigenvalues| of the partially transposed state.

    Raises ``ValueError`` for a non-Hermitian or non-normalised input.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > TRACE_TOL:
        raise ValueError(f"density matrix trace is {np.trace(rho)!r}, not 1")
    lam = pt_eigenvalues(rho, spin)
    return float(np.sum(np.abs(lam) - lam) / 2)


def _psiI_terms(t: float, params: ClusterParams, factors: DecoherenceFactors):
    g, d = factors.gamma, factors.delta
    B = math.cos(params.J0 * t + 8 * d)
    X = math.exp(-16 * g) * B * B
    # e^{-4z} A, with A = exp(-i (Jz - J) t / 2)
    w = np.exp(-4 * factors.z) * np.exp(-1j * (params.Jz - params.J) * t / 2)
    return B, X, w


def pt_eigenvalues_closed(t: float, params: ClusterParams, factors: DecoherenceFactors) -> np.ndarray:
    """Lambda_1..Lambda_4 of the partially transposed psi_I state.

    Roots of the two quadratics the characteristic polynomial factors into;
    Lambda_1 is the one that can go negative.
    """
    B, X, w = _psiI_terms(t, params, factors)
    diff2 = -4 * w.imag**2  # (w - w*)^2
    sum2 = 4 * w.real**2  # (w + w*)^2
    k = (1 + B) ** 2
    r12 = max((1 - X) ** 2 - k * diff2, 0.0)
    r34 = max((3 + X) ** 2 + k * sum2 - 8 * (1 + X), 0.0)
    return np.array(
        [
            (1 - X) / 8 - math.sqrt(r12) / 8,
            (1 - X) / 8 + math.sqrt(r12) / 8,
            (3 + X) / 8 + math.sqrt(r34) / 8,
            (3 + X) / 8 - math.sqrt(r34) / 8,
        ]
    )


def _clamped_sqrt(x: float) -> float:
    if x < 0:
        if x < -SQRT_CLAMP:
            raise ValueError(f"negative discriminant {x!r}")
        return 0.0
    return math.sqrt(x)


def negativity_psiI(t: float, params: ClusterParams, factors: DecoherenceFactors) -> float:
    """Closed-form negativity for the psi_I start under the bath."""
    g, d = factors.gamma, factors.delta
    c1 = 1 - math.exp(-16 * g) * math.cos(params.J0 * t + 8 * d) ** 2
    c2 = (
        16
        * math.exp(-8 * g)
        * math.sin((params.Jz - params.J) * t / 2 + 4 * d) ** 2
        * math.cos(params.J0 * t / 2 + 4 * d) ** 4
    )
    return abs(c1 - _clamped_sqrt(c1 * c1 + c2)) / 8


def negativity_isolated(t: float, params: ClusterParams) -> float:
    """Negativity of the psi_I start without a bath."""
    s2 = math.sin(params.J0 * t) ** 2
    c2 = 16 * math.sin((params.Jz - params.J) * t / 2) ** 2 * math.cos(params.J0 * t / 2) ** 4
    return abs(s2 - _clamped_sqrt(s2 * s2 + c2)) / 8

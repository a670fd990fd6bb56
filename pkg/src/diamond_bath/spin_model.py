"""Four-spin diamond cluster: couplings, exact eigensystem and propagators.

Basis convention: qubit order (a, b, 1, 2), spin up first, so that
``index = 8*(1-m_a)/2 + 4*(1-m_b)/2 + 2*(1-m_1)/2 + (1-m_2)/2``.
Each pair is ordered (up-up, up-down, down-up, down-down). Units hbar = k_B = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

UP, DOWN = 1, -1

#: Pair labels in basis order (up-up, up-down, down-up, down-down).
PAIR_LABELS: tuple[tuple[int, int], ...] = ((UP, UP), (UP, DOWN), (DOWN, UP), (DOWN, DOWN))

#: m_a + m_b (or m_1 + m_2) for each pair index.
PAIR_MAGNETIZATION = np.array([2, 0, 0, -2])


@dataclass(frozen=True)
class ClusterParams:
    """Couplings of the spin Hamiltonian.

    ``J`` and ``Jz`` are the xy and zz Heisenberg couplings of the central pair,
    ``J0`` the Ising coupling to the side spins, ``h`` the field on the side
    spins and ``h_prime`` the field on the central spins.
    """

    J: float
    Jz: float
    J0: float
    h: float = 0.0
    h_prime: float = 0.0

    def __post_init__(self):
        for name in ("J", "Jz", "J0", "h", "h_prime"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"ClusterParams.{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class EigenPair:
    state: np.ndarray
    energy: float


def basis_index(m_a: int, m_b: int, m_1: int, m_2: int) -> int:
    """Position of ``|m_a m_b m_1 m_2>`` in the 16-dimensional basis."""
    for m in (m_a, m_b, m_1, m_2):
        if m not in (UP, DOWN):
            raise ValueError(f"spin labels must be +1 or -1, got {m!r}")
    return 8 * (1 - m_a) // 2 + 4 * (1 - m_b) // 2 + 2 * (1 - m_1) // 2 + (1 - m_2) // 2


def basis_label(index: int) -> tuple[int, int, int, int]:
    """Inverse of :func:`basis_index`."""
    if not 0 <= index < 16:
        raise ValueError(f"basis index out of range: {index}")
    bits = [(index >> k) & 1 for k in (3, 2, 1, 0)]
    return tuple(1 - 2 * b for b in bits)


def total_magnetization() -> np.ndarray:
    """m_a + m_b + m_1 + m_2 for each of the 16 basis states."""
    return np.add.outer(PAIR_MAGNETIZATION, PAIR_MAGNETIZATION).ravel()


# --- explicit operators (used to cross-check the analytic eigensystem) -------

_SX = np.array([[0, 1], [1, 0]], dtype=complex) / 2
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
_SZ = np.array([[1, 0], [0, -1]], dtype=complex) / 2
_ID = np.eye(2, dtype=complex)


def spin_operator(component: str, site: int) -> np.ndarray:
    """S^component on ``site`` (0=a, 1=b, 2=1, 3=2) as a 16x16 matrix."""
    op = {"x": _SX, "y": _SY, "z": _SZ}[component]
    factors = [op if k == site else _ID for k in range(4)]
    return reduce(np.kron, factors)


def hamiltonian_matrix(params: ClusterParams) -> np.ndarray:
    """H_s = H_ab + H_12 + H_int built from spin-1/2 operators."""
    S = {(c, k): spin_operator(c, k) for c in "xyz" for k in range(4)}
    a, b, s1, s2 = 0, 1, 2, 3
    h_ab = (
        params.J * (S["x", a] @ S["x", b] + S["y", a] @ S["y", b])
        + params.Jz * S["z", a] @ S["z", b]
        + params.h_prime * (S["z", a] + S["z", b])
    )
    h_12 = params.h * (S["z", s1] + S["z", s2])
    h_int = params.J0 * (S["z", a] + S["z", b]) @ (S["z", s1] + S["z", s2])
    return h_ab + h_12 + h_int


def ab_hamiltonian_matrix(params: ClusterParams) -> np.ndarray:
    """H_ab of the central pair as a 4x4 matrix."""
    sz = np.diag([0.5, -0.5])
    sx = _SX.real
    sy = _SY
    return (
        params.J * (np.kron(sx, sx) + np.kron(sy, sy))
        + params.Jz * np.kron(sz, sz)
        + params.h_prime * (np.kron(sz, np.eye(2)) + np.kron(np.eye(2), sz))
    ).astype(complex)


# --- analytic eigensystem ---------------------------------------------------

def _ab_eigenstates() -> list[np.ndarray]:
    r = 1 / math.sqrt(2)
    return [
        np.array([1, 0, 0, 0], dtype=complex),
        np.array([0, r, r, 0], dtype=complex),
        np.array([0, r, -r, 0], dtype=complex),
        np.array([0, 0, 0, 1], dtype=complex),
    ]


def eigensystem(params: ClusterParams) -> list[EigenPair]:
    """The 16 eigenpairs of H_s.

    The side-pair state runs over (up-up, up-down, down-up, down-down) in the
    outer loop and the central pair over (up-up, triplet, singlet, down-down)
    in the inner loop, giving psi_1 ... psi_16.
    """
    J, Jz, J0, h, hp = params.J, params.Jz, params.J0, params.h, params.h_prime
    ab_states = _ab_eigenstates()
    pairs = []
    for k12 in range(4):
        side = np.zeros(4, dtype=complex)
        side[k12] = 1.0
        field = h * PAIR_MAGNETIZATION[k12] / 2
        ising = J0 * PAIR_MAGNETIZATION[k12] / 2
        energies = (
            field + Jz / 4 + hp + ising,
            field + J / 2 - Jz / 4,
            field - J / 2 - Jz / 4,
            field + Jz / 4 - hp - ising,
        )
        for ab_state, energy in zip(ab_states, energies):
            # kron(ab, side) matches the (a, b, 1, 2) qubit order.
            pairs.append(EigenPair(np.kron(ab_state, side), float(energy)))
    return pairs


def full_propagator(t: float, params: ClusterParams) -> np.ndarray:
    """exp(-i H_s t) assembled from the analytic eigensystem."""
    pairs = eigensystem(params)
    vecs = np.column_stack([p.state for p in pairs])
    phases = np.exp(-1j * t * np.array([p.energy for p in pairs]))
    return (vecs * phases) @ vecs.conj().T


def propagate_ab_basis(t: float, params: ClusterParams, basis: tuple[int, int]) -> np.ndarray:
    """exp(-i H_ab t) |m_a m_b> expanded in (up-up, up-down, down-up, down-down)."""
    m_a, m_b = basis
    J, Jz, hp = params.J, params.Jz, params.h_prime
    out = np.zeros(4, dtype=complex)
    if (m_a, m_b) == (UP, UP):
        out[0] = np.exp(-1j * (Jz / 4 + hp) * t)
    elif (m_a, m_b) == (DOWN, DOWN):
        out[3] = np.exp(-1j * (Jz / 4 - hp) * t)
    elif (m_a, m_b) in ((UP, DOWN), (DOWN, UP)):
        phase = np.exp(1j * Jz * t / 4)
        c, s = math.cos(J * t / 2), -1j * math.sin(J * t / 2)
        if m_a == UP:
            out[1], out[2] = phase * c, phase * s
        else:
            out[1], out[2] = phase * s, phase * c
    else:
        raise ValueError(f"spin labels must be +1 or -1, got {basis!r}")
    return out


def ab_propagator(t: float, params: ClusterParams) -> np.ndarray:
    """4x4 matrix of exp(-i H_ab t); column k is the image of basis state k."""
    return np.column_stack([propagate_ab_basis(t, params, lab) for lab in PAIR_LABELS])

"""Exact dephasing dynamics and central-pair entanglement of a spin-1/2
Ising-Heisenberg diamond cluster in a thermal bosonic bath."""

from .bath import (
    BathParams,
    DecoherenceFactors,
    FactorCache,
    decoherence_factors,
    reference_factors,
    spectral_density,
)
from .config import Scenario, get_preset, list_presets, load_config, parse_config
from .dynamics import evolve_full, evolve_reduced, psi_I, random_state, reduce_to_ab, rho_ab_psiI
from .entanglement import (
    negativity_general,
    negativity_isolated,
    negativity_psiI,
    pt_eigenvalues_closed,
)
from .quadrature import QuadratureError
from .spin_model import ClusterParams, eigensystem, propagate_ab_basis
from .sweep import run_scenario

__version__ = "0.1.0"

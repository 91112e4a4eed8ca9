"""
nhscope: generalized Petermann factor of non-Hermitian Hamiltonians

Builds lattice and Bloch models, decomposes them, sweeps eta over a parameter
and flags discontinuities in eta and its derivative.
"""

__version__ = "1.0.0"
__author__ = "nhscope developers"

from nhscope.config import Boundary, ModelSpec, ModelVariant, RunConfig, load_config
from nhscope.exceptions import ScopeError
from nhscope.models import Hamiltonian, build, load_hamiltonian
from nhscope.petermann import (
    JordanProfile,
    annotate_discontinuities,
    derivative,
    detect_discontinuities,
    eta,
    eta_bound,
    sweep,
)
from nhscope.spectral import eig_biorthogonal, eig_right

__all__ = [
    "Boundary",
    "Hamiltonian",
    "JordanProfile",
    "ModelSpec",
    "ModelVariant",
    "RunConfig",
    "ScopeError",
    "annotate_discontinuities",
    "build",
    "derivative",
    "detect_discontinuities",
    "eig_biorthogonal",
    "eig_right",
    "eta",
    "eta_bound",
    "load_config",
    "load_hamiltonian",
    "sweep",
]

"""Hamiltonian builders and matrix file ingestion"""

from nhscope.models.base import Hamiltonian
from nhscope.models.bloch import build_pt_ssh_bloch, build_two_level
from nhscope.models.factory import ModelFactory, build
from nhscope.models.io import load_hamiltonian, save_hamiltonian
from nhscope.models.lattice import build_nonreciprocal_ssh, build_quasicrystal, build_sturm_liouville_chain

__all__ = [
    "Hamiltonian",
    "ModelFactory",
    "build",
    "build_nonreciprocal_ssh",
    "build_two_level",
    "build_quasicrystal",
    "build_pt_ssh_bloch",
    "build_sturm_liouville_chain",
    "load_hamiltonian",
    "save_hamiltonian",
]

"""2x2 builders: the two-level EP model and the PT-symmetric Bloch SSH Hamiltonian"""

import numpy as np

from nhscope.config import ModelSpec, ModelVariant
from nhscope.models.base import Hamiltonian, as_params, require_finite

_BLOCH_LABELS = [(1, "A"), (1, "B")]


def build_two_level(gamma: float) -> Hamiltonian:
    """[[0, gamma], [1, 0]]; gamma=0 is a lower-triangular EP"""
    require_finite(gamma=gamma)
    h = np.array([[0.0, gamma], [1.0, 0.0]], dtype=np.complex128)
    return Hamiltonian(entries=h, labels=list(_BLOCH_LABELS),
                       spec=ModelSpec(ModelVariant.TWO_LEVEL, as_params(gamma=gamma)))


def pt_offdiagonal(v: float, w: float, k: float) -> complex:
    """w e^{-ik} + v"""
    return w * np.exp(-1j * k) + v


def build_pt_ssh_bloch(u: float, v: float, w: float, k: float) -> Hamiltonian:
    """[[iu, w e^{-ik} + v], [w e^{ik} + v, -iu]]"""
    require_finite(u=u, v=v, w=w, k=k)
    h = np.array([
        [1j * u, pt_offdiagonal(v, w, k)],
        [w * np.exp(1j * k) + v, -1j * u],
    ], dtype=np.complex128)
    return Hamiltonian(entries=h, labels=list(_BLOCH_LABELS),
                       spec=ModelSpec(ModelVariant.PT_SSH, as_params(u=u, v=v, w=w, k=k)))

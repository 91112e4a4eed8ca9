"""
Generalized Petermann factor

    eta = sum_{n<m} |<R_n|R_m>|^2 / (N(N-1)/2)

over unit-normalized right eigenvectors. eta = 0 for an orthonormal eigenbasis
and eta = 1 when every eigenvector coalesces.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from nhscope.exceptions import ConsistencyError, InvalidInputError
from nhscope.models.base import Hamiltonian
from nhscope.spectral.eigen import EigenSystem, normalize_columns

ROUNDOFF = 1e-12


def _vectors(es: EigenSystem, side: str) -> np.ndarray:
    if side == "right":
        vectors = es.right
    elif side == "left":
        if es.left is None:
            raise InvalidInputError("left eigenvectors requested but not computed; use eig_biorthogonal")
        vectors = es.left
    else:
        raise InvalidInputError(f"side must be 'right' or 'left', got {side!r}")
    if vectors.shape[1] < 2:
        raise InvalidInputError("eta needs at least two eigenstates")
    return normalize_columns(vectors)


def _clamp(value: float) -> float:
    if value < -ROUNDOFF or value > 1 + ROUNDOFF:
        raise ConsistencyError(f"eta = {value!r} lies outside [0, 1] beyond roundoff")
    return min(max(value, 0.0), 1.0)


def eta_from_vectors(vectors: np.ndarray) -> float:
    """(||G||_F^2 - N) / (N(N-1)) with G the Gram matrix of the normalized columns"""
    vectors = normalize_columns(np.asarray(vectors, dtype=np.complex128))
    n = vectors.shape[1]
    if n < 2:
        raise InvalidInputError("eta needs at least two eigenstates")
    gram = vectors.conj().T @ vectors
    value = (float(np.sum(np.abs(gram) ** 2)) - n) / (n * (n - 1))
    return _clamp(value)


def eta(es: EigenSystem, side: str = "right") -> float:
    return eta_from_vectors(_vectors(es, side))


def eta_pairwise(es: EigenSystem, side: str = "right") -> float:
    """Same quantity summed pair by pair"""
    vectors = _vectors(es, side)
    n = vectors.shape[1]
    total = 0.0
    for i in range(n - 1):
        overlaps = vectors[:, i].conj() @ vectors[:, i + 1:]
        total += float(np.sum(np.abs(overlaps) ** 2))
    return _clamp(total / (n * (n - 1) / 2))


def eta_two_level_analytic(gamma: float) -> float:
    """(1-|gamma|)^2 / (1+|gamma|)^2 for H = [[0, gamma], [1, 0]]"""
    g = abs(gamma)
    return (1.0 - g) ** 2 / (1.0 + g) ** 2


@dataclass(frozen=True)
class JordanProfile:
    """Jordan block sizes d_n of a (possibly defective) matrix"""
    blocks: Tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(d) for d in self.blocks)
        if any(d != original for d, original in zip(blocks, self.blocks)) or any(d < 1 for d in blocks):
            raise InvalidInputError(f"Jordan block sizes must be positive integers, got {self.blocks}")
        object.__setattr__(self, "blocks", blocks)
        if self.N < 2:
            raise InvalidInputError(f"eta_c needs N >= 2, got N = {self.N}")

    @property
    def N(self) -> int:
        return sum(self.blocks)


def eta_bound(profile: JordanProfile) -> float:
    """eta_c = sum d_n(d_n - 1) / (N(N-1))"""
    n = profile.N
    return sum(d * (d - 1) for d in profile.blocks) / (n * (n - 1))


def jordan_matrix(profile: JordanProfile, eigenvalues: Optional[Sequence[complex]] = None) -> Hamiltonian:
    """Block-diagonal Jordan form; block n defaults to eigenvalue n"""
    if eigenvalues is None:
        eigenvalues = range(len(profile.blocks))
    eigenvalues = list(eigenvalues)
    if len(eigenvalues) != len(profile.blocks):
        raise InvalidInputError("one eigenvalue per Jordan block is required")
    blocks = [lam * np.eye(d) + np.eye(d, k=1) for lam, d in zip(eigenvalues, profile.blocks)]
    return Hamiltonian.external(scipy.linalg.block_diag(*blocks))

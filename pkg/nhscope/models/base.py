"""
Dense Hamiltonian container shared by every model builder
"""

import math
from dataclasses import dataclass, field
from typing import List, Mapping, Optional, Tuple

import numpy as np

from nhscope.config import ModelSpec, ModelVariant
from nhscope.exceptions import InvalidSpecError

SiteLabel = Tuple[int, str]

EXTERNAL_SPEC = ModelSpec(variant=ModelVariant.EXTERNAL)


@dataclass
class Hamiltonian:
    """
    Square complex matrix with (cell, sublattice) labels per basis index.

    weights, when set, is a positive diagonal M with M H Hermitian. eig_right
    then solves the Hermitian problem M^1/2 H M^-1/2 instead of the dense one.
    """
    entries: np.ndarray
    labels: List[SiteLabel]
    spec: ModelSpec = field(default=EXTERNAL_SPEC)
    weights: Optional[np.ndarray] = None

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=np.complex128)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise InvalidSpecError(f"Hamiltonian must be square, got shape {self.entries.shape}")
        if self.entries.shape[0] < 1:
            raise InvalidSpecError("Hamiltonian must have dimension >= 1")
        if not np.all(np.isfinite(self.entries)):
            raise InvalidSpecError("Hamiltonian has non-finite entries")
        if len(self.labels) != self.entries.shape[0]:
            raise InvalidSpecError(
                f"{len(self.labels)} labels for a {self.entries.shape[0]}-dimensional matrix"
            )
        if self.weights is not None:
            self.weights = np.asarray(self.weights, dtype=float)
            if self.weights.shape != (self.entries.shape[0],) or not np.all(self.weights > 0):
                raise InvalidSpecError("weights must be one positive number per basis index")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def norm(self) -> float:
        """Frobenius norm"""
        return float(np.linalg.norm(self.entries))

    def hermiticity_defect(self) -> float:
        """Frobenius norm of H - H^dagger"""
        return float(np.linalg.norm(self.entries - self.entries.conj().T))

    def is_hermitian(self, tol: float = 0.0) -> bool:
        return self.hermiticity_defect() <= tol

    @classmethod
    def external(cls, entries: np.ndarray) -> 'Hamiltonian':
        entries = np.asarray(entries)
        return cls(entries=entries, labels=[(i + 1, "-") for i in range(len(entries))])


def require_finite(**values: float):
    """Reject NaN or infinite scalar parameters"""
    for name, value in values.items():
        if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
            raise InvalidSpecError(f"Parameter '{name}' must be a real number, got {value!r}")
        if not math.isfinite(value):
            raise InvalidSpecError(f"Parameter '{name}' must be finite, got {value!r}")


def require_size(name: str, value: int):
    if isinstance(value, bool) or int(value) != value or value < 2:
        raise InvalidSpecError(f"{name} must be an integer >= 2, got {value!r}")


def cell_labels(cells: int, sublattices: str) -> List[SiteLabel]:
    """Labels for basis index = len(sublattices)*(n-1) + s"""
    return [(n, s) for n in range(1, cells + 1) for s in sublattices]


def as_params(**values: float) -> Mapping[str, float]:
    return {name: float(value) for name, value in values.items()}

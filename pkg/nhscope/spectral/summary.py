"""Spectrum-level diagnostics"""

from dataclasses import asdict, dataclass
from typing import Any, Dict

import numpy as np
from scipy.spatial.distance import pdist

from nhscope.exceptions import InvalidInputError
from nhscope.spectral.eigen import EigenSystem


@dataclass(frozen=True)
class SpectrumSummary:
    max_imag: float
    is_real: bool
    min_gap: float
    real_tol: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def spectrum_summary(es: EigenSystem, real_tol: float = 1e-10) -> SpectrumSummary:
    """is_real holds when max|Im E| <= real_tol * max(1, max|E|)"""
    if not real_tol > 0:
        raise InvalidInputError(f"real_tol must be > 0, got {real_tol}")
    eigenvalues = np.asarray(es.eigenvalues)
    max_imag = float(np.max(np.abs(eigenvalues.imag)))
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    if eigenvalues.size > 1:
        points = np.column_stack([eigenvalues.real, eigenvalues.imag])
        min_gap = float(np.min(pdist(points)))
    else:
        min_gap = float("inf")
    return SpectrumSummary(
        max_imag=max_imag,
        is_real=bool(max_imag <= real_tol * scale),
        min_gap=min_gap,
        real_tol=real_tol,
    )

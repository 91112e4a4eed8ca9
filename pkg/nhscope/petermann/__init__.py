"""Petermann factor, sweeps and discontinuity detection"""

from nhscope.petermann.detector import DiscontinuityReport, detect_discontinuities
from nhscope.petermann.eta import (
    JordanProfile,
    eta,
    eta_bound,
    eta_from_vectors,
    eta_pairwise,
    eta_two_level_analytic,
    jordan_matrix,
)
from nhscope.petermann.sweep import (
    EtaSample,
    SweepResult,
    SweepRunner,
    annotate_discontinuities,
    derivative,
    one_sided_slopes,
    sweep,
)

__all__ = [
    "DiscontinuityReport",
    "EtaSample",
    "JordanProfile",
    "SweepResult",
    "SweepRunner",
    "annotate_discontinuities",
    "derivative",
    "detect_discontinuities",
    "eta",
    "eta_bound",
    "eta_from_vectors",
    "eta_pairwise",
    "eta_two_level_analytic",
    "jordan_matrix",
    "one_sided_slopes",
    "sweep",
]

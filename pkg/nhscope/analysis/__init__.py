"""Edge modes, bulk transforms, PT Bloch helpers and Sturm-Liouville verification"""

from nhscope.analysis.bulk import (
    BulkBiorthogonality,
    SimilarityTransform,
    bulk_biorthogonality,
    effective_bloch,
    ep_report,
    pt_dispersion,
    pt_ep_momenta,
    pt_phase,
    similarity_check,
    similarity_transform,
)
from nhscope.analysis.checks import CheckReport, run_checks
from nhscope.analysis.edge import (
    EdgeStatePair,
    analytic_edge_states,
    edge_transition_scan,
    extract_zero_modes,
    transition_location,
)
from nhscope.analysis.finite_size import FiniteSizePoint, finite_size_scan
from nhscope.analysis.sturm_liouville import SturmLiouvilleReport, sturm_liouville_verify

__all__ = [
    "BulkBiorthogonality",
    "CheckReport",
    "EdgeStatePair",
    "FiniteSizePoint",
    "SimilarityTransform",
    "SturmLiouvilleReport",
    "analytic_edge_states",
    "bulk_biorthogonality",
    "edge_transition_scan",
    "effective_bloch",
    "ep_report",
    "extract_zero_modes",
    "finite_size_scan",
    "pt_dispersion",
    "pt_ep_momenta",
    "pt_phase",
    "run_checks",
    "similarity_check",
    "similarity_transform",
    "sturm_liouville_verify",
    "transition_location",
]

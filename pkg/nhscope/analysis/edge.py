"""
Zero-energy edge modes of the open non-reciprocal SSH chain

Numerical pairs come from the eigendecomposition; the analytic pair is the
geometric profile on each sublattice:

    A-mode  phi_{n,A} = (-t1/(t2-g))^(n-1) phi_{1,A}
    B-mode  phi_{n,B} = (-t1/(t2+g))^(N-n) phi_{N,B}
"""

import asyncio
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from nhscope.config import Boundary, ScopeSettings
from nhscope.exceptions import (
    AmbiguousModesError,
    InvalidInputError,
    InvalidRegimeError,
    InvalidSpecError,
    NoEdgeModesError,
)
from nhscope.logger import get_logger
from nhscope.models.lattice import build_nonreciprocal_ssh
from nhscope.petermann.sweep import SweepRunner
from nhscope.spectral.eigen import EigenSystem, eig_right

logger = get_logger(__name__)

# Fraction of sites at each end counted as "boundary"
BOUNDARY_FRACTION = 0.1
LOCALIZED_WEIGHT = 0.5
OVERLAP_THRESHOLD = 0.5
# Default zero-mode tolerance relative to the spectral radius
ZERO_MODE_RTOL = 1e-6

ScanPoint = Tuple[float, float]


def boundary_weights(state: np.ndarray) -> Tuple[float, float]:
    """Sum of |psi|^2 over the nearest 10% of sites at the left and right ends"""
    density = np.abs(state) ** 2
    total = float(np.sum(density))
    if total == 0:
        return 0.0, 0.0
    edge = max(1, math.ceil(BOUNDARY_FRACTION * len(state)))
    return float(np.sum(density[:edge]) / total), float(np.sum(density[-edge:]) / total)


def side_of(weights: Tuple[float, float]) -> str:
    left, right = weights
    if left >= LOCALIZED_WEIGHT:
        return "left"
    if right >= LOCALIZED_WEIGHT:
        return "right"
    return "bulk"


@dataclass
class EdgeStatePair:
    stateL: np.ndarray
    stateR: np.ndarray
    energies: Tuple[complex, complex]
    overlap: float
    localization: Tuple[Tuple[float, float], Tuple[float, float]]
    ratios: Optional[Tuple[float, float]] = None
    vanished: bool = False
    critical: bool = False

    @property
    def sides(self) -> Tuple[str, str]:
        """'left', 'right' or 'bulk' for stateL and stateR"""
        return side_of(self.localization[0]), side_of(self.localization[1])


def _unit(vector: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(vector)
    return vector / norm if norm > 0 else vector


def make_pair(first: np.ndarray, second: np.ndarray, energies: Tuple[complex, complex], **flags) -> EdgeStatePair:
    """Normalize two states, order them left-first and attach diagnostics"""
    first, second = _unit(np.asarray(first, dtype=np.complex128)), _unit(np.asarray(second, dtype=np.complex128))
    weights = [boundary_weights(first), boundary_weights(second)]
    if weights[1][0] > weights[0][0]:
        first, second = second, first
        weights.reverse()
        energies = (energies[1], energies[0])
    overlap = min(1.0, float(abs(np.vdot(first, second))))
    return EdgeStatePair(stateL=first, stateR=second, energies=energies, overlap=overlap,
                         localization=(weights[0], weights[1]), **flags)


def extract_zero_modes(es: EigenSystem, tol: Optional[float] = None) -> EdgeStatePair:
    """The two states with |E| < tol; exactly two are required"""
    magnitudes = np.abs(es.eigenvalues)
    if tol is None:
        tol = ZERO_MODE_RTOL * es.spectral_radius
    candidates = np.flatnonzero(magnitudes < tol)
    if len(candidates) < 2:
        raise NoEdgeModesError(
            f"{len(candidates)} state(s) with |E| < {tol:.3e}; the chain is in a trivial phase",
            count=len(candidates),
        )
    if len(candidates) > 2:
        raise AmbiguousModesError(
            f"{len(candidates)} states with |E| < {tol:.3e}; tighten the zero-mode tolerance",
            count=len(candidates),
        )
    first, second = sorted(candidates, key=lambda i: (magnitudes[i], i))
    return make_pair(es.right[:, first], es.right[:, second],
                     (complex(es.eigenvalues[first]), complex(es.eigenvalues[second])))


def _check_regime(t2: float, g: float):
    if not abs(g) < t2:
        raise InvalidRegimeError(f"needs |g| < t2, got g={g}, t2={t2}")


def _geometric(ratio: float, count: int) -> np.ndarray:
    """ratio^(0..count-1) normalized, computed without overflow"""
    if abs(ratio) <= 1:
        profile = ratio ** np.arange(count, dtype=float)
    else:
        profile = (1.0 / ratio) ** np.arange(count - 1, -1, -1, dtype=float)
    return profile / np.linalg.norm(profile)


def analytic_edge_states(t1: float, t2: float, g: float, cells: int) -> EdgeStatePair:
    """
    Closed-form zero modes. When t1 > t2 - g the A-mode violates phi_{N,A} = 0 in
    the thermodynamic limit and is reported as vanished (zero vector); at
    t1 = t2 - g its profile is flat and the pair is flagged critical.
    """
    _check_regime(t2, g)
    if not t1 > 0:
        raise InvalidSpecError(f"t1 must be > 0, got {t1}")
    if cells < 2:
        raise InvalidSpecError(f"cells must be >= 2, got {cells}")

    ratio_a = -t1 / (t2 - g)
    ratio_b = -t1 / (t2 + g)
    critical = math.isclose(abs(ratio_a), 1.0, rel_tol=0, abs_tol=1e-12)
    vanished = abs(ratio_a) > 1 and not critical

    state_a = np.zeros(2 * cells, dtype=np.complex128)
    if not vanished:
        state_a[0::2] = _geometric(ratio_a, cells)
    state_b = np.zeros(2 * cells, dtype=np.complex128)
    state_b[1::2] = _geometric(ratio_b, cells)[::-1]

    weights_a = boundary_weights(state_a)
    weights_b = boundary_weights(state_b)
    return EdgeStatePair(
        stateL=state_a,
        stateR=state_b,
        energies=(0j, 0j),
        overlap=float(abs(np.vdot(state_a, state_b))),
        localization=(weights_a, weights_b),
        ratios=(ratio_a, ratio_b),
        vanished=vanished,
        critical=critical,
    )


def bulk_gap(t1: float, t2: float, g: float) -> float:
    """|t2bar - t1|, the gap edge of the effective Hermitian chain"""
    return abs(math.sqrt((t2 - g) * (t2 + g)) - t1)


def _overlap_at(t1: float, t2: float, g: float, cells: int, tol: Optional[float]) -> float:
    es = eig_right(build_nonreciprocal_ssh(t1, t2, g, cells, Boundary.OPEN))
    point_tol = tol if tol is not None else 0.5 * bulk_gap(t1, t2, g)
    return extract_zero_modes(es, point_tol).overlap


async def edge_transition_scan_async(t2: float, g: float, cells: int, t1_grid: Sequence[float],
                                     tol: Optional[float] = None,
                                     settings: Optional[ScopeSettings] = None) -> List[ScanPoint]:
    _check_regime(t2, g)
    grid = [float(t1) for t1 in t1_grid]
    critical = math.sqrt(t2 * t2 - g * g)
    if not grid or any(t1 >= critical for t1 in grid):
        raise InvalidInputError(f"t1 grid must lie inside the topological phase t1 < {critical:.6g}")

    logger.info(f"🔍 Edge-state scan: {len(grid)} points, {cells} cells, t2={t2}, g={g}")
    runner = SweepRunner(settings, job_id=f"edge-L{cells}")
    overlaps = await runner.map(lambda t1: _overlap_at(t1, t2, g, cells, tol), grid)
    return list(zip(grid, overlaps))


def edge_transition_scan(t2: float, g: float, cells: int, t1_grid: Sequence[float],
                         tol: Optional[float] = None,
                         settings: Optional[ScopeSettings] = None) -> List[ScanPoint]:
    """Zero-mode overlap |<e1|e2>| at each t1; default tolerance is half the bulk gap"""
    return asyncio.run(edge_transition_scan_async(t2, g, cells, t1_grid, tol, settings))


def transition_location(points: Sequence[ScanPoint], threshold: float = OVERLAP_THRESHOLD) -> Optional[float]:
    """First t1 from which the overlap stays at or above the threshold to the end of the scan"""
    location = None
    for t1, overlap in points:
        if overlap < threshold:
            location = None
        elif location is None:
            location = t1
    return location

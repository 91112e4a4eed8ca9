"""
Finite-size scan of the edge-state transition

Each grid point is diagonalized once for both eta and the zero-mode overlap.
t1* is the sustained overlap crossing, or the eta jump when exactly one is
resolved within a grid step of that crossing.
"""

import asyncio
import math
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from nhscope.config import Boundary, ScopeSettings
from nhscope.exceptions import InvalidInputError, InvalidRegimeError
from nhscope.logger import get_logger
from nhscope.analysis.edge import bulk_gap, extract_zero_modes, transition_location
from nhscope.models.lattice import build_nonreciprocal_ssh
from nhscope.petermann.detector import DEFAULT_KAPPA, DEFAULT_WINDOW, detect_discontinuities
from nhscope.petermann.eta import eta
from nhscope.petermann.sweep import SweepRunner
from nhscope.spectral.eigen import eig_right

logger = get_logger(__name__)

METHODS = ("eta", "overlap")


class FiniteSizePoint(NamedTuple):
    size: int
    t1_star: Optional[float]
    source: str


def size_floor(cells: int) -> float:
    """Half the eta change of one eigenvector pair going from orthogonal to parallel"""
    dim = 2 * cells
    return 0.5 / (dim * (dim - 1))


def _edge_point(t1: float, t2: float, g: float, cells: int, tol: Optional[float]) -> Tuple[float, float]:
    es = eig_right(build_nonreciprocal_ssh(t1, t2, g, cells, Boundary.OPEN))
    point_tol = tol if tol is not None else 0.5 * bulk_gap(t1, t2, g)
    return eta(es), extract_zero_modes(es, point_tol).overlap


def _eta_jump(etas: Sequence[float], grid: np.ndarray, cells: int,
              w: int, kappa: float, floor: float) -> Optional[float]:
    if len(grid) < 2 * w + 2:
        logger.warning(f"⚠️ {len(grid)} grid points are too few for the eta detector (w={w})")
        return None
    report = detect_discontinuities(etas, grid, w=w, kappa=kappa, floor=floor, kind="eta")
    if len(report.locations) != 1:
        logger.warning(f"⚠️ L={cells}: {len(report.locations)} eta jumps resolved, "
                       "falling back to the overlap crossing")
        return None
    return report.locations[0][1]


async def finite_size_scan_async(t2: float, g: float, sizes: Sequence[int], t1_grid: Sequence[float],
                                 method: str = "eta",
                                 w: int = DEFAULT_WINDOW, kappa: float = DEFAULT_KAPPA,
                                 floor: Optional[float] = None,
                                 tol: Optional[float] = None,
                                 settings: Optional[ScopeSettings] = None) -> List[FiniteSizePoint]:
    if method not in METHODS:
        raise InvalidInputError(f"method must be one of {METHODS}, got {method!r}")
    sizes = [int(size) for size in sizes]
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InvalidInputError(f"sizes must be a non-empty increasing list, got {sizes}")
    if not abs(g) < t2:
        raise InvalidRegimeError(f"needs |g| < t2, got g={g}, t2={t2}")
    grid = np.asarray(t1_grid, dtype=float)
    critical = math.sqrt(t2 * t2 - g * g)
    if grid.size == 0 or np.any(grid >= critical):
        raise InvalidInputError(f"t1 grid must lie inside the topological phase t1 < {critical:.6g}")
    step = float(np.max(np.diff(grid))) if grid.size > 1 else 0.0

    points = []
    for cells in sizes:
        runner = SweepRunner(settings, job_id=f"finite-size-L{cells}")
        values = await runner.map(lambda t1: _edge_point(t1, t2, g, cells, tol), grid)
        etas = [value[0] for value in values]
        crossing = transition_location([(float(t1), value[1]) for t1, value in zip(grid, values)])

        jump = None
        if method == "eta":
            jump = _eta_jump(etas, grid, cells, w, kappa, floor if floor is not None else size_floor(cells))
            if jump is not None and (crossing is None or abs(jump - crossing) > step * (1 + 1e-9)):
                logger.warning(f"⚠️ L={cells}: eta jump at {jump:.6g} is away from the overlap crossing "
                               f"{crossing}; using the crossing")
                jump = None
        if jump is not None:
            points.append(FiniteSizePoint(cells, jump, "eta"))
        else:
            points.append(FiniteSizePoint(cells, crossing, "overlap"))
        logger.info(f"📏 L={cells}: t1* = {points[-1].t1_star} ({points[-1].source})")
    return points


def finite_size_scan(t2: float, g: float, sizes: Sequence[int], t1_grid: Sequence[float],
                     method: str = "eta", **kwargs) -> List[FiniteSizePoint]:
    """Transition location t1* per chain length"""
    return asyncio.run(finite_size_scan_async(t2, g, sizes, t1_grid, method=method, **kwargs))

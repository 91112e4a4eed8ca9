"""
Parameter sweeps of eta

Grid points are independent: SweepRunner evaluates them on a thread pool and
reassembles results in grid order, so output never depends on scheduling.
"""

import asyncio
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Set, Tuple, TypeVar

import numpy as np
import pandas as pd

from nhscope.config import ModelSpec, ScopeSettings
from nhscope.exceptions import InvalidInputError, ScopeError, SweepPointError
from nhscope.logger import get_logger, log_sweep_progress
from nhscope.models.factory import build
from nhscope.petermann.detector import (
    DEFAULT_DETA_FLOOR_FRACTION,
    DEFAULT_ETA_FLOOR,
    DEFAULT_KAPPA,
    DEFAULT_WINDOW,
    DiscontinuityReport,
    detect_discontinuities,
)
from nhscope.petermann.eta import eta
from nhscope.spectral.eigen import eig_right
from nhscope.spectral.summary import SpectrumSummary, spectrum_summary

logger = get_logger(__name__)

ETA_JUMP = "eta_jump"
DETA_JUMP = "deta_jump"

T = TypeVar("T")
R = TypeVar("R")


@dataclass
class EtaSample:
    param: float
    eta: float
    spectrum: SpectrumSummary
    flags: Set[str] = field(default_factory=set)

    @property
    def flag(self) -> str:
        """Single CSV flag; an eta jump outranks a derivative jump"""
        if ETA_JUMP in self.flags:
            return ETA_JUMP
        if DETA_JUMP in self.flags:
            return DETA_JUMP
        return ""


@dataclass
class SweepResult:
    model: ModelSpec
    axis: str
    samples: List[EtaSample]
    deta: List[float] = field(default_factory=list)

    @property
    def grid(self) -> np.ndarray:
        return np.array([s.param for s in self.samples])

    @property
    def etas(self) -> np.ndarray:
        return np.array([s.eta for s in self.samples])

    def argmax(self) -> int:
        """Index of the largest eta; ties go to the smaller parameter"""
        return int(np.argmax(self.etas))

    def argmin(self) -> int:
        return int(np.argmin(self.etas))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "param": self.grid,
            "eta": self.etas,
            "deta": np.asarray(self.deta, dtype=float),
            "flag": [s.flag for s in self.samples],
        })


def uniform_grid(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 3:
        raise InvalidInputError(f"steps must be >= 3, got {steps}")
    if not lo < hi:
        raise InvalidInputError(f"lo ({lo}) must be < hi ({hi})")
    return np.linspace(lo, hi, steps)


def central_derivative(values: Sequence[float], grid: Sequence[float]) -> np.ndarray:
    """Central differences inside, one-sided at the ends; grid must be uniform"""
    values = np.asarray(values, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if len(values) < 3 or len(values) != len(grid):
        raise InvalidInputError("derivative needs >= 3 samples on a matching grid")
    steps = np.diff(grid)
    h = float(np.mean(steps))
    if h <= 0 or not np.allclose(steps, h, rtol=1e-6, atol=0):
        raise InvalidInputError("derivative needs a uniform, strictly increasing grid")
    return np.gradient(values, h, edge_order=1)


def derivative(sw: SweepResult) -> List[float]:
    return central_derivative(sw.etas, sw.grid).tolist()


def one_sided_slopes(evaluate: Callable[[float], float], x0: float, h: float) -> Tuple[float, float]:
    """(f(x0) - f(x0-h))/h and (f(x0+h) - f(x0))/h"""
    if not h > 0:
        raise InvalidInputError(f"step h must be > 0, got {h}")
    center = evaluate(x0)
    return (center - evaluate(x0 - h)) / h, (evaluate(x0 + h) - center) / h


def evaluate_point(spec: ModelSpec, axis: str, value: float, real_tol: float = 1e-10) -> EtaSample:
    """build -> eig_right -> eta at one grid point"""
    es = eig_right(build(spec.with_param(axis, value)))
    return EtaSample(param=float(value), eta=eta(es), spectrum=spectrum_summary(es, real_tol))


class SweepRunner:
    """Evaluates independent grid points concurrently, preserving grid order"""

    def __init__(self, settings: Optional[ScopeSettings] = None,
                 max_workers: Optional[int] = None,
                 job_id: str = "sweep"):
        self.settings = settings or ScopeSettings.from_environment()
        self.max_workers = max_workers or self.settings.threads
        self.job_id = job_id

    async def map(self, func: Callable[[T], R], items: Sequence[T],
                  params: Optional[Sequence[float]] = None) -> List[R]:
        """Apply func to every item; a failure is re-raised as SweepPointError"""
        items = list(items)
        params = list(params) if params is not None else [
            float(item) if isinstance(item, (int, float)) else float("nan") for item in items
        ]
        loop = asyncio.get_running_loop()
        done = 0

        def call(index: int):
            try:
                return func(items[index])
            except ScopeError as e:
                raise SweepPointError(index, params[index], e) from e

        async def tracked(pool, index: int):
            nonlocal done
            result = await loop.run_in_executor(pool, call, index)
            done += 1
            log_sweep_progress(self.job_id, done, len(items))
            return result

        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            return list(await asyncio.gather(*(tracked(pool, i) for i in range(len(items)))))

    async def run(self, model: ModelSpec, axis: str, lo: float, hi: float, steps: int,
                  real_tol: Optional[float] = None) -> SweepResult:
        grid = uniform_grid(lo, hi, steps)
        # fail fast on an unknown axis
        model.with_param(axis, lo)
        real_tol = real_tol if real_tol is not None else self.settings.real_tol

        logger.info(f"🚀 Sweeping {model.variant.value} over {axis} in [{lo:.6g}, {hi:.6g}] "
                    f"({steps} points, {self.max_workers} thread(s))")
        start = time.perf_counter()
        samples = await self.map(lambda x: evaluate_point(model, axis, x, real_tol), grid, grid)
        result = SweepResult(model=model, axis=axis, samples=samples)
        result.deta = derivative(result)
        logger.info(f"✅ Sweep finished in {time.perf_counter() - start:.2f}s")
        return result


def sweep(model: ModelSpec, axis: str, lo: float, hi: float, steps: int,
          settings: Optional[ScopeSettings] = None, real_tol: Optional[float] = None) -> SweepResult:
    """Synchronous sweep; not callable from inside a running event loop"""
    return asyncio.run(SweepRunner(settings).run(model, axis, lo, hi, steps, real_tol=real_tol))


def annotate_discontinuities(sw: SweepResult, w: int = DEFAULT_WINDOW, kappa: float = DEFAULT_KAPPA,
                             floor: float = DEFAULT_ETA_FLOOR,
                             deta_floor_fraction: float = DEFAULT_DETA_FLOOR_FRACTION
                             ) -> Tuple[DiscontinuityReport, DiscontinuityReport]:
    """Run the detector on eta and on its derivative, flagging the right end of each jump"""
    grid = sw.grid
    deta = np.asarray(sw.deta, dtype=float)
    eta_report = detect_discontinuities(sw.etas, grid, w=w, kappa=kappa, floor=floor, kind="eta")
    deta_floor = deta_floor_fraction * float(np.max(np.abs(deta))) if deta.size else 0.0
    deta_report = detect_discontinuities(deta, grid, w=w, kappa=kappa, floor=deta_floor, kind="deta")

    index = {float(x): i for i, x in enumerate(grid)}
    for report, flag in ((eta_report, ETA_JUMP), (deta_report, DETA_JUMP)):
        for _, right, _ in report.locations:
            sw.samples[index[right]].flags.add(flag)
    return eta_report, deta_report

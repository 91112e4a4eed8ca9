"""
Job Manager for nhscope
Runs one RunConfig command, writes its artifacts and reports an exit status
"""

import asyncio
import math
import time
import uuid
from dataclasses import dataclass, field
from typing import Any, Awaitable, Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from nhscope.analysis.bulk import ep_report, pt_phase
from nhscope.analysis.checks import run_checks
from nhscope.analysis.edge import bulk_gap, edge_transition_scan_async, extract_zero_modes, transition_location
from nhscope.analysis.finite_size import finite_size_scan_async
from nhscope.analysis.sturm_liouville import sturm_liouville_verify
from nhscope.config import CommandType, ConfigManager, JobStatus, ModelSpec, ModelVariant, RunConfig, ScopeSettings
from nhscope.exceptions import (
    ConfigError,
    IngestionError,
    InvalidInputError,
    InvalidSpecError,
    ScopeError,
    SweepPointError,
)
from nhscope.logger import get_logger, log_job_complete, log_job_failed, log_job_start
from nhscope.models.base import Hamiltonian
from nhscope.models.factory import build
from nhscope.models.io import load_hamiltonian
from nhscope.petermann.detector import DiscontinuityReport
from nhscope.petermann.eta import JordanProfile, eta, eta_bound
from nhscope.petermann.sweep import SweepResult, SweepRunner, annotate_discontinuities
from nhscope.spectral.eigen import eig_right
from nhscope.spectral.summary import spectrum_summary
from nhscope.storage.writer import ArtifactWriter

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

INVALID_INPUT_ERRORS = (ConfigError, ValidationError, InvalidSpecError, IngestionError, InvalidInputError)

# Sweep axis when the config leaves grid.axis unset
DEFAULT_AXES: Dict[ModelVariant, str] = {
    ModelVariant.SSH: "t1",
    ModelVariant.TWO_LEVEL: "gamma",
    ModelVariant.QUASICRYSTAL: "V",
    ModelVariant.PT_SSH: "k",
    ModelVariant.STURM_LIOUVILLE: "g",
}

SL_COMPLETENESS_TOL = 1e-10


def exit_code_for(error: BaseException) -> int:
    """2 for unusable input, 3 for numerical failures, 1 for anything unexpected"""
    if isinstance(error, SweepPointError):
        return exit_code_for(error.cause)
    if isinstance(error, INVALID_INPUT_ERRORS):
        return EXIT_INVALID
    if isinstance(error, ScopeError):
        return EXIT_NUMERICAL
    return EXIT_FAILURE


@dataclass
class JobResult:
    """Result of a job execution"""
    job_id: str
    status: JobStatus
    result_data: Dict[str, Any] = field(default_factory=dict)
    summary: str = ""
    artifacts: List[str] = field(default_factory=list)
    error_message: Optional[str] = None
    exit_code: int = EXIT_OK
    execution_time_seconds: float = 0.0


def _format_locations(report: DiscontinuityReport) -> str:
    return "[" + ", ".join(f"{right:.6g}" for _, right, _ in report.locations) + "]"


def _sweep_summary(sw: SweepResult, reports: Tuple[DiscontinuityReport, DiscontinuityReport]) -> str:
    grid, etas = sw.grid, sw.etas
    hi, lo = sw.argmax(), sw.argmin()
    eta_report, deta_report = reports
    return (f"{sw.model.variant.value} over {sw.axis}: eta max {etas[hi]:.6g} at {sw.axis}={grid[hi]:.6g}, "
            f"min {etas[lo]:.6g} at {sw.axis}={grid[lo]:.6g}; "
            f"{len(eta_report.locations)} eta_jump {_format_locations(eta_report)}, "
            f"{len(deta_report.locations)} deta_jump {_format_locations(deta_report)}")


class JobManager:
    """Executes CLI commands and tracks their results"""

    def __init__(self, config_manager: Optional[ConfigManager] = None):
        self.config_manager = config_manager or ConfigManager()
        self.settings: ScopeSettings = self.config_manager.settings
        self.job_results: Dict[str, JobResult] = {}
        self._handlers: Dict[CommandType, Callable[[str, RunConfig, ArtifactWriter], Awaitable[Tuple[Dict[str, Any], str]]]] = {
            CommandType.SWEEP: self._sweep,
            CommandType.SPECTRUM: self._spectrum,
            CommandType.EDGE: self._edge,
            CommandType.FINITE_SIZE: self._finite_size,
            CommandType.BLOCH: self._bloch,
            CommandType.BOUND: self._bound,
            CommandType.VERIFY_SL: self._verify_sl,
            CommandType.CHECK: self._check,
        }

    async def execute(self, config: RunConfig) -> JobResult:
        """Run one command; failures are reported in the result, never raised"""
        job_id = f"{config.command.value}_{uuid.uuid4().hex[:8]}"
        writer = ArtifactWriter(config.format)
        target = config.output or "stdout"
        log_job_start(job_id, config.command.value, target)
        start = time.perf_counter()

        try:
            data, summary = await self._handlers[config.command](job_id, config, writer)
            status = JobStatus.COMPLETED
            exit_code = EXIT_OK
            error_message = None
            if data.get("passed") is False:
                status, exit_code = JobStatus.FAILED, EXIT_NUMERICAL
                error_message = summary
        except Exception as e:
            data, summary = {}, ""
            status, exit_code = JobStatus.FAILED, exit_code_for(e)
            error_message = f"{type(e).__name__}: {e}"
            if exit_code == EXIT_FAILURE:
                logger.exception(f"❌ Unexpected error in {job_id}")

        elapsed = time.perf_counter() - start
        result = JobResult(
            job_id=job_id,
            status=status,
            result_data=data,
            summary=summary,
            artifacts=[str(path) for path in writer.written],
            error_message=error_message,
            exit_code=exit_code,
            execution_time_seconds=elapsed,
        )
        if status == JobStatus.COMPLETED:
            log_job_complete(job_id, elapsed)
        else:
            log_job_failed(job_id, error_message or "unknown error")
        self.job_results[job_id] = result
        return result

    @staticmethod
    def _spec(config: RunConfig) -> ModelSpec:
        return config.model.to_spec()

    @staticmethod
    def _require_variant(spec: ModelSpec, *variants: ModelVariant):
        if spec.variant not in variants:
            names = ", ".join(v.value for v in variants)
            raise ConfigError(f"command needs model variant {names}, got '{spec.variant.value}'",
                              field="model.variant")

    @staticmethod
    def _grid_bounds(config: RunConfig, default: Optional[Tuple[float, float]] = None) -> Tuple[float, float]:
        lo = config.grid.lo if config.grid.lo is not None else (default[0] if default else None)
        hi = config.grid.hi if config.grid.hi is not None else (default[1] if default else None)
        if lo is None or hi is None:
            raise ConfigError("grid.lo and grid.hi are required for this command",
                              field="grid.lo" if lo is None else "grid.hi")
        if not lo < hi:
            raise ConfigError(f"grid.lo ({lo}) must be < grid.hi ({hi})", field="grid.lo")
        return lo, hi

    async def _run_sweep(self, job_id: str, config: RunConfig, spec: ModelSpec,
                         bounds: Tuple[float, float]) -> Tuple[SweepResult, Tuple[DiscontinuityReport, DiscontinuityReport]]:
        axis = config.grid.axis or DEFAULT_AXES[spec.variant]
        runner = SweepRunner(self.settings, job_id=job_id)
        sw = await runner.run(spec, axis, bounds[0], bounds[1], config.grid.steps, real_tol=self.settings.real_tol)
        detector = config.detector
        reports = annotate_discontinuities(sw, w=detector.w, kappa=detector.kappa, floor=detector.floor,
                                           deta_floor_fraction=detector.deta_floor_fraction)
        return sw, reports

    @staticmethod
    def _sweep_data(sw: SweepResult, reports: Tuple[DiscontinuityReport, DiscontinuityReport]) -> Dict[str, Any]:
        hi = sw.argmax()
        return {
            "axis": sw.axis,
            "eta_max": float(sw.etas[hi]),
            "argmax": float(sw.grid[hi]),
            "eta_min": float(sw.etas[sw.argmin()]),
            "argmin": float(sw.grid[sw.argmin()]),
            "reports": [report.to_dict() for report in reports],
            "all_real": all(sample.spectrum.is_real for sample in sw.samples),
        }

    async def _sweep(self, job_id: str, config: RunConfig, writer: ArtifactWriter):
        spec = self._spec(config)
        sw, reports = await self._run_sweep(job_id, config, spec, self._grid_bounds(config))
        if config.output:
            writer.write_sweep(sw, reports, config.output)
        return self._sweep_data(sw, reports), _sweep_summary(sw, reports)

    async def _bloch(self, job_id: str, config: RunConfig, writer: ArtifactWriter):
        spec = self._spec(config)
        self._require_variant(spec, ModelVariant.PT_SSH)
        if config.grid.axis not in (None, "k"):
            raise ConfigError(f"bloch sweeps the momentum k, not '{config.grid.axis}'", field="grid.axis")
        sw, reports = await self._run_sweep(job_id, config, spec, self._grid_bounds(config, (-math.pi, math.pi)))
        u, v, w = spec.param("u"), spec.param("v"), spec.param("w")
        ep = ep_report(u, v, w)
        if config.output:
            writer.write_sweep(sw, reports, config.output)
            writer.write_report(ep, config.output, sidecar="ep")
        data = {**self._sweep_data(sw, reports), "ep": ep, "phase": pt_phase(u, v, w)}
        summary = _sweep_summary(sw, reports) + f"; PT {data['phase']}"
        if ep["exists"]:
            summary += f", EPs at k={ep['k_ep_plus']:.6g}, {ep['k_ep_minus']:.6g}"
        return data, summary

    def _hamiltonian(self, config: RunConfig) -> Hamiltonian:
        if config.matrix:
            return load_hamiltonian(config.matrix)
        spec = self._spec(config)
        if spec.variant == ModelVariant.EXTERNAL:
            raise ConfigError("an external model needs a matrix file", field="matrix")
        return build(spec)

    async def _spectrum(self, job_id: str, config: RunConfig, writer: ArtifactWriter):
        hamiltonian = self._hamiltonian(config)
        es = await asyncio.to_thread(eig_right, hamiltonian)
        bad = [n for n in config.states if not 0 <= n < es.dim]
        if bad:
            raise InvalidInputError(f"states {bad} out of range for dimension {es.dim}")
        summary = spectrum_summary(es, self.settings.real_tol)
        value = eta(es)
        if config.output:
            writer.write_spectrum(es, config.output)
            writer.write_eigenvectors(es, config.states, config.output)
        data = {"dim": es.dim, "eta": value, "residual": es.residual_right, **summary.to_dict()}
        return data, (f"dim {es.dim}: eta {value:.6g}, max|Im E| {summary.max_imag:.3g}, "
                      f"real={summary.is_real}, min gap {summary.min_gap:.3g}")

    async def _edge(self, job_id: str, config: RunConfig, writer: ArtifactWriter):
        spec = self._spec(config)
        self._require_variant(spec, ModelVariant.SSH)
        t1, t2, g = spec.param("t1"), spec.param("t2"), spec.param("g")

        if config.grid.lo is not None or config.grid.hi is not None:
            if config.grid.axis not in (None, "t1"):
                raise ConfigError(f"edge scans t1, not '{config.grid.axis}'", field="grid.axis")
            lo, hi = self._grid_bounds(config)
            grid = np.linspace(lo, hi, config.grid.steps)
            points = await edge_transition_scan_async(t2, g, spec.size, grid, tol=config.tol,
                                                      settings=self.settings)
            location = transition_location(points)
            if config.output:
                writer.write_edge_scan(points, config.output)
            data = {"points": len(points), "transition": location}
            found = f"{location:.6g}" if location is not None else "none"
            return data, f"edge scan over t1 in [{lo:.6g}, {hi:.6g}] at L={spec.size}: overlap crosses 0.5 at t1={found}"

        es = await asyncio.to_thread(eig_right, build(spec))
        tol = config.tol
        if tol is None and abs(g) < t2:
            tol = 0.5 * bulk_gap(t1, t2, g)
        pair = extract_zero_modes(es, tol)
        if config.output:
            writer.write_edge_states(pair, config.output)
        data = {
            "overlap": pair.overlap,
            "energies": [[e.real, e.imag] for e in pair.energies],
            "sides": list(pair.sides),
        }
        return data, f"edge modes at t1={t1:.6g}: overlap {pair.overlap:.6g}, sides {pair.sides[0]}/{pair.sides[1]}"

    async def _finite_size(self, job_id: str, config: RunConfig, writer: ArtifactWriter):
        spec = self._spec(config)
        self._require_variant(spec, ModelVariant.SSH)
        lo, hi = self._grid_bounds(config)
        grid = np.linspace(lo, hi, config.grid.steps)
        detector = config.detector
        # without an explicit floor each size gets one scaled to its dimension
        floor = detector.floor if "floor" in detector.model_fields_set else None
        points = await finite_size_scan_async(
            spec.param("t2"), spec.param("g"), config.sizes, grid, method=config.method,
            w=detector.w, kappa=detector.kappa, floor=floor, tol=config.tol, settings=self.settings,
        )
        if config.output:
            writer.write_finite_size(points, config.output)
        data = {"points": [point._asdict() for point in points]}
        listing = ", ".join(
            f"L={p.size}: {p.t1_star:.6g}" if p.t1_star is not None else f"L={p.size}: none" for p in points
        )
        return data, f"t1* per size ({config.method}): {listing}"

    async def _bound(self, job_id: str, config: RunConfig, writer: ArtifactWriter):
        profile = JordanProfile(tuple(config.blocks))
        value = eta_bound(profile)
        if config.output:
            writer.write_json({"blocks": list(profile.blocks), "eta_c": value}, config.output)
        return {"blocks": list(profile.blocks), "eta_c": value}, repr(value)

    async def _verify_sl(self, job_id: str, config: RunConfig, writer: ArtifactWriter):
        spec = self._spec(config)
        self._require_variant(spec, ModelVariant.STURM_LIOUVILLE)
        t0, g = spec.param("t0"), spec.param("g")
        report = await asyncio.to_thread(sturm_liouville_verify, build(spec), t0, g, self.settings.real_tol)
        passed = report.spectrum_real and report.completeness_residual < SL_COMPLETENESS_TOL
        data = {**report.to_dict(), "passed": passed}
        if config.output:
            writer.write_json(data, config.output)
        return data, (f"Sturm-Liouville t0={t0:.6g}, g={g:.6g}: real={report.spectrum_real}, "
                      f"completeness residual {report.completeness_residual:.3g}")

    async def _check(self, job_id: str, config: RunConfig, writer: ArtifactWriter):
        report = await asyncio.to_thread(run_checks)
        data = report.to_dict()
        if config.output:
            writer.write_json(data, config.output)
        failed = [result.name for result in report.results if not result.passed]
        summary = f"{len(report.results) - len(failed)}/{len(report.results)} checks passed"
        if failed:
            summary += f"; failed: {', '.join(failed)}"
        return data, summary

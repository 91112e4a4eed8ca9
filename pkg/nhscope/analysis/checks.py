"""
Self-verification battery behind the `check` command
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from nhscope.analysis.bulk import bulk_biorthogonality, pt_bloch_at_ep, similarity_check
from nhscope.analysis.sturm_liouville import sturm_liouville_verify
from nhscope.logger import get_logger
from nhscope.models.bloch import build_two_level
from nhscope.models.lattice import build_sturm_liouville_chain
from nhscope.petermann.eta import JordanProfile, eta, eta_bound, eta_two_level_analytic
from nhscope.petermann.sweep import one_sided_slopes
from nhscope.spectral.eigen import eig_right

logger = get_logger(__name__)


@dataclass
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool


@dataclass
class CheckReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "results": [asdict(result) for result in self.results]}


def _two_level_error() -> float:
    gammas = np.linspace(0.01, 3.0, 300)
    return max(abs(eta(eig_right(build_two_level(g))) - eta_two_level_analytic(g)) for g in gammas)


def _two_level_slopes() -> float:
    left, right = one_sided_slopes(lambda g: eta(eig_right(build_two_level(g))), 0.0, 1e-6)
    return max(abs(left - 4.0), abs(right + 4.0))


def _bound_units() -> float:
    cases = {(5,): 1.0, (1, 1, 1, 1): 0.0, (2, 2): 1.0 / 3.0}
    return max(abs(eta_bound(JordanProfile(blocks)) - expected) for blocks, expected in cases.items())


def _ep_coalescence() -> float:
    return 1.0 - eta(eig_right(pt_bloch_at_ep(0.5, 0.8, 0.7)))


def _sturm_liouville() -> float:
    return sturm_liouville_verify(build_sturm_liouville_chain(1.0, 1.5, 30), 1.0, 1.5).completeness_residual


# name -> (evaluate, threshold); a check passes when evaluate() < threshold
CHECKS: Dict[str, Tuple[Callable[[], float], float]] = {
    "two_level_analytic": (_two_level_error, 1e-10),
    "two_level_one_sided_slopes": (_two_level_slopes, 1e-3),
    "coalescence_bound_units": (_bound_units, 1e-15),
    "similarity_transform": (lambda: similarity_check(0.5, 1.0, 0.1, 20), 1e-12),
    "bulk_biorthogonality": (lambda: bulk_biorthogonality(0.99, 1.0, 0.1, 150).residual, 1e-8),
    "pt_ep_coalescence": (_ep_coalescence, 1e-6),
    "sturm_liouville_completeness": (_sturm_liouville, 1e-10),
}


def run_checks() -> CheckReport:
    report = CheckReport()
    for name, (evaluate, threshold) in CHECKS.items():
        value = float(evaluate())
        passed = math.isfinite(value) and value < threshold
        report.results.append(CheckResult(name=name, value=value, threshold=threshold, passed=passed))
        (logger.info if passed else logger.error)(f"{'✅' if passed else '❌'} {name}: {value:.3e} (< {threshold:g})")
    return report

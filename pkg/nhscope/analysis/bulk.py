"""
Bulk structure of the non-reciprocal SSH chain and the PT-symmetric Bloch model

With S = diag(1, 1, r, r, ..., r^(N-1), r^(N-1)) and r = sqrt((t2-g)/(t2+g)),
the open chain satisfies S H S^-1 = H_SSH(t1, t2bar), t2bar = sqrt((t2-g)(t2+g)).
Right bulk states are S^-1 psi, left bulk states S psi, for psi eigenvectors of
the Hermitian chain.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
import scipy.linalg

from nhscope.config import Boundary
from nhscope.exceptions import InvalidInputError, InvalidRegimeError, PairingError
from nhscope.logger import get_logger
from nhscope.models.base import Hamiltonian
from nhscope.models.bloch import build_pt_ssh_bloch, pt_offdiagonal
from nhscope.models.lattice import build_nonreciprocal_ssh
from nhscope.petermann.eta import eta
from nhscope.spectral.eigen import eig_biorthogonal, eig_right, normalize_columns, residual

logger = get_logger(__name__)


@dataclass(frozen=True)
class SimilarityTransform:
    r: float
    diag: np.ndarray
    t2bar: float

    @property
    def cells(self) -> int:
        return len(self.diag) // 2

    def ratio(self, i: int, j: int) -> float:
        """S_ii / S_jj as r^(cell_i - cell_j), free of underflow in r^(N-1)"""
        return self.r ** (i // 2 - j // 2)


def similarity_transform(t2: float, g: float, cells: int) -> SimilarityTransform:
    if not abs(g) < t2:
        raise InvalidRegimeError(f"similarity transform needs |g| < t2, got g={g}, t2={t2}")
    r = math.sqrt((t2 - g) / (t2 + g))
    diag = np.repeat(r ** np.arange(cells, dtype=float), 2)
    return SimilarityTransform(r=r, diag=diag, t2bar=math.sqrt((t2 - g) * (t2 + g)))


def effective_bloch(t1: float, t2: float, g: float, k: float) -> Hamiltonian:
    """(t1 + t2bar cos k) sigma_x + t2bar sin k sigma_y"""
    if not abs(g) < t2:
        raise InvalidRegimeError(f"effective Bloch Hamiltonian needs |g| < t2, got g={g}, t2={t2}")
    t2bar = math.sqrt((t2 - g) * (t2 + g))
    offdiag = t1 + t2bar * np.exp(-1j * k)
    return Hamiltonian.external(np.array([[0, offdiag], [np.conj(offdiag), 0]], dtype=np.complex128))


def similarity_check(t1: float, t2: float, g: float, cells: int) -> float:
    """max |S H S^-1 - H_SSH(t1, t2bar)| for the open chain"""
    transform = similarity_transform(t2, g, cells)
    h = build_nonreciprocal_ssh(t1, t2, g, cells, Boundary.OPEN).entries
    rows, cols = np.nonzero(h)
    conjugated = np.zeros_like(h)
    for i, j in zip(rows, cols):
        conjugated[i, j] = h[i, j] * transform.ratio(i, j)
    hermitian = build_nonreciprocal_ssh(t1, transform.t2bar, 0.0, cells, Boundary.OPEN).entries
    return float(np.max(np.abs(conjugated - hermitian)))


@dataclass
class BulkBiorthogonality:
    """
    Bulk states (|E| > gap) of the open chain.

    analytic_residual covers S^-1 psi and S psi: their eigen-equation residuals
    against H and H^dagger, and max|<L_n|R_m> - delta_nm|. numeric_residual is
    max|<L_n|R_m> - delta_nm| from eig_biorthogonal, or None if pairing failed.
    """
    analytic_residual: float
    numeric_residual: Optional[float]
    states: int

    @property
    def residual(self) -> float:
        if self.numeric_residual is None:
            return math.inf
        return max(self.analytic_residual, self.numeric_residual)

    def to_dict(self) -> Dict[str, Any]:
        return {"analytic_residual": self.analytic_residual,
                "numeric_residual": self.numeric_residual,
                "states": self.states}


def bulk_biorthogonality(t1: float, t2: float, g: float, cells: int, gap: float = 1e-3) -> BulkBiorthogonality:
    transform = similarity_transform(t2, g, cells)
    h = build_nonreciprocal_ssh(t1, t2, g, cells, Boundary.OPEN).entries
    hermitian = build_nonreciprocal_ssh(t1, transform.t2bar, 0.0, cells, Boundary.OPEN).entries
    energies, psi = scipy.linalg.eigh(hermitian)
    bulk = np.abs(energies) > gap
    right = psi[:, bulk] / transform.diag[:, None]
    left = psi[:, bulk] * transform.diag[:, None]
    analytic = max(
        float(np.max(np.abs(left.conj().T @ right - np.eye(int(bulk.sum()))))),
        residual(h, energies[bulk], normalize_columns(right)),
        residual(h.conj().T, energies[bulk], normalize_columns(left)),
    )

    numeric = None
    try:
        es = eig_biorthogonal(h)
        keep = np.abs(es.eigenvalues) > gap
        gram = es.left[:, keep].conj().T @ es.right[:, keep]
        numeric = float(np.max(np.abs(gram - np.eye(int(keep.sum())))))
    except PairingError as e:
        logger.warning(f"⚠️ Numeric biorthogonal pairing failed: {e}")
    logger.debug(f"🔗 Bulk biorthogonality: analytic {analytic:.2e}, numeric {numeric}")
    return BulkBiorthogonality(analytic_residual=analytic, numeric_residual=numeric, states=int(bulk.sum()))


def pt_dispersion(u: float, v: float, w: float, k: float) -> Tuple[complex, complex]:
    """+-sqrt(|w e^{-ik} + v|^2 - u^2), principal branch"""
    root = np.sqrt(complex(abs(pt_offdiagonal(v, w, k)) ** 2 - u * u))
    return complex(root), complex(-root)


def pt_ep_momenta(u: float, v: float, w: float) -> Optional[Tuple[float, float]]:
    """(+k_EP, -k_EP) with cos k_EP = (u^2 - v^2 - w^2) / (2vw), or None if no EP exists"""
    if v * w == 0:
        raise InvalidInputError("EP momenta need v*w != 0")
    argument = (u * u - v * v - w * w) / (2 * v * w)
    if not -1.0 <= argument <= 1.0:
        return None
    k = math.acos(argument)
    return k, -k


def pt_phase(u: float, v: float, w: float) -> str:
    """'broken' when |w - v| < u (EPs present), else 'unbroken'"""
    return "broken" if abs(w - v) < u else "unbroken"


def ep_report(u: float, v: float, w: float) -> Dict[str, Any]:
    """EP momenta with eta evaluated exactly there (1 at a 2x2 coalescence)"""
    momenta = pt_ep_momenta(u, v, w)
    etas = [eta(eig_right(build_pt_ssh_bloch(u, v, w, k))) for k in momenta] if momenta else [None, None]
    return {
        "k_ep_plus": momenta[0] if momenta else None,
        "k_ep_minus": momenta[1] if momenta else None,
        "eta_ep_plus": etas[0],
        "eta_ep_minus": etas[1],
        "exists": momenta is not None,
    }


def pt_bloch_at_ep(u: float, v: float, w: float) -> Optional[Hamiltonian]:
    momenta = pt_ep_momenta(u, v, w)
    return build_pt_ssh_bloch(u, v, w, momenta[0]) if momenta else None

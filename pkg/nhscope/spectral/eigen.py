"""
Dense non-Hermitian eigendecomposition

Right eigenvectors come from scipy.linalg.eig on H, or from scipy.linalg.eigh
when the Hamiltonian carries weights M with M H Hermitian. Left eigenvectors
come from scipy.linalg.eig on H^dagger, matched to the right ones by
eigenvalue, then refined to the rows of R^-1.
"""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import scipy.linalg

from nhscope.exceptions import NumericalFailureError, PairingError
from nhscope.logger import get_logger
from nhscope.models.base import Hamiltonian

logger = get_logger(__name__)

MatrixLike = Union[Hamiltonian, np.ndarray]

# Relative to the Frobenius norm of H
PAIRING_TOL = 1e-6
# |<L|R>| below this means the pair sits on an exceptional point
DEFECTIVE_OVERLAP = 1e-14
# Relative defect allowed in M^1/2 H M^-1/2 before the weighted solve is refused
HERMITIAN_TOL = 1e-12


@dataclass
class EigenSystem:
    """Sorted eigenvalues with unit-norm right eigenvectors as columns"""
    eigenvalues: np.ndarray
    right: np.ndarray
    residual_right: float
    left: Optional[np.ndarray] = None
    biorth_residual: Optional[float] = None

    @property
    def dim(self) -> int:
        return self.right.shape[0]

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues))) if self.eigenvalues.size else 0.0


def _entries(hamiltonian: MatrixLike) -> np.ndarray:
    if isinstance(hamiltonian, Hamiltonian):
        return hamiltonian.entries
    return Hamiltonian.external(np.asarray(hamiltonian)).entries


def _solve(matrix: np.ndarray):
    try:
        return scipy.linalg.eig(matrix, check_finite=True)
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise NumericalFailureError(
            "dense eigensolver failed", dim=matrix.shape[0],
            diagnostics={"error": str(e), "norm": float(np.linalg.norm(matrix))},
        ) from e


def _solve_weighted(matrix: np.ndarray, weights: np.ndarray):
    """Eigenpairs of H from eigh of M^1/2 H M^-1/2, or None if that is not Hermitian"""
    root = np.sqrt(weights)
    symmetric = root[:, None] * matrix / root[None, :]
    defect = float(np.linalg.norm(symmetric - symmetric.conj().T))
    if defect > HERMITIAN_TOL * max(1.0, float(np.linalg.norm(matrix))):
        logger.warning(f"⚠️ Weighted matrix is not Hermitian (defect {defect:.3e}); using the dense solver")
        return None
    try:
        values, vectors = scipy.linalg.eigh(0.5 * (symmetric + symmetric.conj().T))
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise NumericalFailureError(
            "Hermitian eigensolver failed", dim=matrix.shape[0],
            diagnostics={"error": str(e), "norm": float(np.linalg.norm(matrix))},
        ) from e
    return values.astype(np.complex128), vectors / root[:, None]


def normalize_columns(vectors: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=0)
    norms[norms == 0] = 1.0
    return vectors / norms


def fix_phase(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive"""
    pivots = np.argmax(np.abs(vectors), axis=0)
    values = vectors[pivots, np.arange(vectors.shape[1])]
    phases = np.where(np.abs(values) > 0, values / np.where(values == 0, 1, np.abs(values)), 1.0)
    return vectors / phases


def residual(matrix: np.ndarray, eigenvalues: np.ndarray, vectors: np.ndarray) -> float:
    """max_n ||H v_n - E_n v_n|| / ||H||_F"""
    scale = np.linalg.norm(matrix)
    if scale == 0:
        return 0.0
    errors = np.linalg.norm(matrix @ vectors - vectors * eigenvalues, axis=0)
    return float(np.max(errors) / scale)


def eig_right(hamiltonian: MatrixLike) -> EigenSystem:
    """
    Right eigenpairs sorted by (Re E, Im E).

    Defective inputs are not rejected: the solver's nearly parallel basis is
    returned and residual_right records the quality. Weighted Hamiltonians
    get a basis that stays stable inside numerically degenerate clusters.
    """
    matrix = _entries(hamiltonian)
    weights = hamiltonian.weights if isinstance(hamiltonian, Hamiltonian) else None
    solved = _solve_weighted(matrix, weights) if weights is not None else None
    eigenvalues, vectors = solved if solved is not None else _solve(matrix)
    order = np.lexsort((eigenvalues.imag, eigenvalues.real))
    eigenvalues = eigenvalues[order]
    vectors = fix_phase(normalize_columns(vectors[:, order]))
    return EigenSystem(
        eigenvalues=eigenvalues,
        right=vectors,
        residual_right=residual(matrix, eigenvalues, vectors),
    )


def _greedy_pairing(targets: np.ndarray, candidates: np.ndarray):
    """Match each target to a distinct candidate, smallest distance first"""
    n = len(targets)
    distances = np.abs(targets[:, None] - candidates[None, :])
    order = np.argsort(distances, axis=None, kind="stable")
    assignment = np.full(n, -1, dtype=int)
    used = np.zeros(n, dtype=bool)
    matched = 0
    for flat in order:
        row, col = divmod(int(flat), n)
        if assignment[row] >= 0 or used[col]:
            continue
        assignment[row] = col
        used[col] = True
        matched += 1
        if matched == n:
            break
    return assignment, distances[np.arange(n), assignment]


def eig_biorthogonal(hamiltonian: MatrixLike) -> EigenSystem:
    """Right eigenpairs plus matched left eigenvectors scaled to <L_n|R_n> = 1"""
    matrix = _entries(hamiltonian)
    es = eig_right(matrix)

    left_values, left_vectors = _solve(matrix.conj().T)
    assignment, distances = _greedy_pairing(es.eigenvalues, left_values.conj())
    worst = float(np.max(distances)) if distances.size else 0.0
    tolerance = PAIRING_TOL * np.linalg.norm(matrix)
    if worst > tolerance:
        raise PairingError(
            f"left/right eigenvalue pairing distance {worst:.3e} exceeds {tolerance:.3e}; "
            "spectrum is near-degenerate or defective",
            distance=worst,
        )

    left = normalize_columns(left_vectors[:, assignment])
    overlaps = np.einsum("ij,ij->j", left.conj(), es.right)
    if np.any(np.abs(overlaps) < DEFECTIVE_OVERLAP):
        n = int(np.argmin(np.abs(overlaps)))
        raise PairingError(
            f"left and right eigenvectors of E={es.eigenvalues[n]:.6g} are orthogonal "
            "(exceptional point)",
            distance=worst,
        )
    left = left / overlaps.conj()
    # Rows of R^-1 are the same left vectors with <L_n|R_m> = delta_nm to solver precision
    try:
        left = scipy.linalg.solve(es.right, np.eye(es.dim, dtype=np.complex128)).conj().T
    except scipy.linalg.LinAlgError:
        logger.debug("🔗 Right eigenvectors are singular; keeping the paired left vectors")

    gram = left.conj().T @ es.right
    es.left = left
    es.biorth_residual = float(np.max(np.abs(gram - np.eye(es.dim))))
    logger.debug(f"🔗 Biorthogonal pairing: max distance {worst:.2e}, residual {es.biorth_residual:.2e}")
    return es

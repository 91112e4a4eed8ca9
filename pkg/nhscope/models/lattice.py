"""
Real-space lattice builders: non-reciprocal SSH, quasicrystal, Sturm-Liouville chain

Storage convention: an amplitude for hopping from basis state j onto basis
state i sits at entries[i, j].
"""

import math
from typing import Union

import numpy as np

from nhscope.config import Boundary, ModelSpec, ModelVariant
from nhscope.exceptions import InvalidSpecError
from nhscope.models.base import Hamiltonian, as_params, cell_labels, require_finite, require_size

BoundaryLike = Union[Boundary, str]


def build_nonreciprocal_ssh(t1: float, t2: float, g: float, cells: int,
                            boundary: BoundaryLike = Boundary.OPEN) -> Hamiltonian:
    """
    Non-reciprocal SSH chain, basis index 2(n-1)+s with s=0 for A and s=1 for B.

    Intracell hopping t1 is reciprocal. The intercell hop from B_n onto A_{n+1}
    carries t2+g and the reverse hop carries t2-g.
    """
    require_finite(t1=t1, t2=t2, g=g)
    require_size("cells", cells)
    boundary = Boundary(boundary)

    dim = 2 * cells
    h = np.zeros((dim, dim), dtype=np.complex128)
    for n in range(cells):
        a, b = 2 * n, 2 * n + 1
        h[a, b] += t1
        h[b, a] += t1
    for n in range(cells - 1):
        b, a_next = 2 * n + 1, 2 * n + 2
        h[a_next, b] += t2 + g
        h[b, a_next] += t2 - g
    if boundary == Boundary.PERIODIC:
        h[0, dim - 1] += t2 + g
        h[dim - 1, 0] += t2 - g

    spec = ModelSpec(ModelVariant.SSH, as_params(t1=t1, t2=t2, g=g), size=cells, boundary=boundary)
    return Hamiltonian(entries=h, labels=cell_labels(cells, "AB"), spec=spec)


def quasicrystal_potential(V: float, alpha_num: int, alpha_den: int, sites: int) -> np.ndarray:
    """V * exp(-2 pi i alpha n) for n = 1..sites, with alpha = alpha_num/alpha_den exact"""
    n = np.arange(1, sites + 1)
    phase = (alpha_num * n) % alpha_den
    return V * np.exp(-2j * np.pi * phase / alpha_den)


def build_quasicrystal(JR: float, JL: float, V: float, alpha_num: int = 239, alpha_den: int = 169,
                       sites: int = 169, boundary: BoundaryLike = Boundary.PERIODIC) -> Hamiltonian:
    """Non-reciprocal chain with JL on the superdiagonal, JR on the subdiagonal and a complex potential"""
    require_finite(JR=JR, JL=JL, V=V)
    require_size("sites", sites)
    boundary = Boundary(boundary)
    if V < 0:
        raise InvalidSpecError(f"Potential strength V must be non-negative, got {V}")
    if int(alpha_num) != alpha_num or int(alpha_den) != alpha_den or alpha_num < 1 or alpha_den < 1:
        raise InvalidSpecError(f"alpha must be a ratio of positive integers, got {alpha_num}/{alpha_den}")
    alpha_num, alpha_den = int(alpha_num), int(alpha_den)
    if math.gcd(alpha_num, alpha_den) != 1:
        raise InvalidSpecError(f"alpha_num/alpha_den = {alpha_num}/{alpha_den} is not in lowest terms")

    h = np.diag(quasicrystal_potential(V, alpha_num, alpha_den, sites)).astype(np.complex128)
    idx = np.arange(sites - 1)
    h[idx, idx + 1] += JL
    h[idx + 1, idx] += JR
    if boundary == Boundary.PERIODIC:
        h[sites - 1, 0] += JL
        h[0, sites - 1] += JR

    spec = ModelSpec(
        ModelVariant.QUASICRYSTAL,
        {**as_params(JR=JR, JL=JL, V=V), "alpha_num": alpha_num, "alpha_den": alpha_den},
        size=sites, boundary=boundary,
    )
    return Hamiltonian(entries=h, labels=[(n, "-") for n in range(1, sites + 1)], spec=spec)


def build_sturm_liouville_chain(t0: float, g: float, cells: int,
                                boundary: BoundaryLike = Boundary.OPEN) -> Hamiltonian:
    """
    Three-site chain, basis index 3(n-1)+s for A, B, C.

    Within a cell A->B and C->B carry t0*g, B->A and B->C carry t0/g.
    C_n <-> A_{n+1} carries t0*g both ways. Open chains end on C_N.
    The weights (1, 1/g^2, 1) per cell make M H real symmetric.
    """
    require_finite(t0=t0, g=g)
    require_size("cells", cells)
    boundary = Boundary(boundary)
    if g == 0:
        raise InvalidSpecError("g must be non-zero (the chain has 1/g hoppings)")

    dim = 3 * cells
    h = np.zeros((dim, dim), dtype=np.complex128)
    for n in range(cells):
        a, b, c = 3 * n, 3 * n + 1, 3 * n + 2
        h[b, a] += t0 * g
        h[a, b] += t0 / g
        h[b, c] += t0 * g
        h[c, b] += t0 / g
    for n in range(cells - 1):
        c, a_next = 3 * n + 2, 3 * n + 3
        h[a_next, c] += t0 * g
        h[c, a_next] += t0 * g
    if boundary == Boundary.PERIODIC:
        h[0, dim - 1] += t0 * g
        h[dim - 1, 0] += t0 * g

    spec = ModelSpec(ModelVariant.STURM_LIOUVILLE, as_params(t0=t0, g=g), size=cells, boundary=boundary)
    weights = np.tile([1.0, 1.0 / (g * g), 1.0], cells)
    return Hamiltonian(entries=h, labels=cell_labels(cells, "ABC"), spec=spec, weights=weights)

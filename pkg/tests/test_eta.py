import itertools

import numpy as np
import pytest
from scipy.stats import unitary_group

from nhscope.analysis.bulk import pt_bloch_at_ep
from nhscope.exceptions import InvalidInputError
from nhscope.models import Hamiltonian, build_two_level
from nhscope.petermann import (
    JordanProfile,
    eta,
    eta_bound,
    eta_from_vectors,
    eta_pairwise,
    eta_two_level_analytic,
    jordan_matrix,
    one_sided_slopes,
)
from nhscope.spectral import eig_biorthogonal, eig_right


def two_level_eta(gamma):
    return eta(eig_right(build_two_level(gamma)))


def test_two_level_matches_closed_form():
    for gamma in np.linspace(0.01, 3.0, 300):
        assert abs(two_level_eta(gamma) - eta_two_level_analytic(gamma)) < 1e-10


def test_two_level_closed_form_for_negative_gamma():
    for gamma in (-0.3, -2.0):
        assert abs(two_level_eta(gamma) - eta_two_level_analytic(gamma)) < 1e-10


def test_two_level_cusp_slopes():
    left, right = one_sided_slopes(two_level_eta, 0.0, 1e-6)
    assert abs(left - 4.0) < 1e-3
    assert abs(right + 4.0) < 1e-3


def test_two_level_limits():
    assert two_level_eta(0.0) == pytest.approx(1.0, abs=1e-12)
    assert two_level_eta(1.0) < 1e-12


def test_hermitian_eta_vanishes(random_matrix):
    a = random_matrix(10)
    assert eta(eig_right(a + a.conj().T)) < 1e-12


def test_pairwise_matches_gram_on_integer_matrices(rng):
    checked = 0
    while checked < 200:
        h = rng.integers(-3, 4, size=(3, 3)).astype(float)
        values = np.linalg.eigvals(h)
        gaps = np.abs(values[:, None] - values[None, :]) + np.eye(3)
        if np.min(gaps) < 1e-3:
            continue
        es = eig_right(h)
        assert abs(eta(es) - eta_pairwise(es)) < 1e-10
        checked += 1


def test_unitary_similarity_invariance(rng):
    for _ in range(100):
        h = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        u = unitary_group.rvs(6, random_state=rng)
        rotated = u @ h @ u.conj().T
        assert abs(eta(eig_right(h)) - eta(eig_right(rotated))) < 1e-9


def test_left_side_needs_left_vectors(random_matrix):
    es = eig_right(random_matrix(5))
    with pytest.raises(InvalidInputError):
        eta(es, side="left")
    with pytest.raises(InvalidInputError):
        eta(es, side="both")
    value = eta(eig_biorthogonal(random_matrix(5)), side="left")
    assert 0.0 <= value <= 1.0


def test_eta_needs_two_states():
    with pytest.raises(InvalidInputError):
        eta(eig_right(Hamiltonian.external(np.array([[1.0]]))))
    with pytest.raises(InvalidInputError):
        eta_from_vectors(np.ones((3, 1)))


def test_parallel_vectors_give_one():
    vectors = np.ones((4, 3), dtype=complex)
    assert eta_from_vectors(vectors) == pytest.approx(1.0)


def test_bound_unit_cases():
    assert eta_bound(JordanProfile((5,))) == 1.0
    assert eta_bound(JordanProfile((1, 1, 1, 1))) == 0.0
    assert eta_bound(JordanProfile((2, 2))) == pytest.approx(1.0 / 3.0, abs=1e-15)


def test_bound_rejects_bad_profiles():
    with pytest.raises(InvalidInputError):
        JordanProfile((1,))
    with pytest.raises(InvalidInputError):
        JordanProfile((2, 0))


@pytest.mark.parametrize("blocks", [(2, 1), (2, 2), (3,)])
def test_jordan_matrix_respects_bound(blocks):
    profile = JordanProfile(blocks)
    ham = jordan_matrix(profile)
    assert ham.dim == profile.N
    assert eta(eig_right(ham)) <= eta_bound(profile) + 1e-7


def test_jordan_matrix_needs_one_eigenvalue_per_block():
    with pytest.raises(InvalidInputError):
        jordan_matrix(JordanProfile((2, 1)), eigenvalues=[0.0])


def test_pt_bloch_at_ep_coalesces():
    assert eta(eig_right(pt_bloch_at_ep(0.5, 0.8, 0.7))) > 1 - 1e-6


def test_eta_stays_in_unit_interval(rng):
    for _ in range(1000):
        n = int(rng.integers(2, 41))
        h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        assert 0.0 <= eta(eig_right(h)) <= 1.0


def test_eta_ignores_column_scaling(rng):
    vectors = eig_right(rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))).right
    scales = rng.normal(size=7) + 1j * rng.normal(size=7)
    assert abs(eta_from_vectors(vectors * scales) - eta_from_vectors(vectors)) < 1e-12


def test_pairwise_matches_gram_on_all_small_integer_matrices():
    checked = 0
    for entries in itertools.product((-1.0, 0.0, 1.0), repeat=9):
        h = np.array(entries).reshape(3, 3)
        values = np.linalg.eigvals(h)
        gaps = np.abs(values[:, None] - values[None, :]) + np.eye(3)
        if np.min(gaps) < 1e-3:
            continue
        es = eig_right(h)
        assert abs(eta(es) - eta_pairwise(es)) < 1e-10
        checked += 1
    assert checked > 0


def test_normal_matrices_have_identity_gram(rng):
    for _ in range(20):
        u = unitary_group.rvs(8, random_state=rng)
        h = u @ np.diag(rng.normal(size=8) + 1j * rng.normal(size=8)) @ u.conj().T
        es = eig_right(h)
        np.testing.assert_allclose(es.right.conj().T @ es.right, np.eye(8), atol=1e-8)
        assert eta(es) < 1e-12

import numpy as np
import pytest

from nhscope.exceptions import InvalidSpecError, PairingError
from nhscope.models import Hamiltonian, build_sturm_liouville_chain, build_two_level
from nhscope.petermann import eta
from nhscope.spectral import eig_biorthogonal, eig_right, spectrum_summary


def test_eig_right_sorted_and_normalized(random_matrix):
    es = eig_right(random_matrix(12))
    keys = list(zip(es.eigenvalues.real, es.eigenvalues.imag))
    assert keys == sorted(keys)
    np.testing.assert_allclose(np.linalg.norm(es.right, axis=0), 1.0, atol=1e-12)
    assert es.residual_right < 1e-12


def test_eig_right_fixes_phase(random_matrix):
    es = eig_right(random_matrix(8))
    pivots = es.right[np.argmax(np.abs(es.right), axis=0), np.arange(8)]
    np.testing.assert_allclose(pivots.imag, 0.0, atol=1e-12)
    assert np.all(pivots.real > 0)


def test_eig_right_rejects_non_finite():
    with pytest.raises(InvalidSpecError):
        eig_right(np.array([[1.0, np.nan], [0.0, 1.0]]))


def test_biorthogonal_residual_on_random_matrices(rng):
    for _ in range(200):
        h = rng.normal(size=(20, 20)) + 1j * rng.normal(size=(20, 20))
        es = eig_biorthogonal(h)
        assert es.biorth_residual < 1e-8
        np.testing.assert_allclose(np.einsum("ij,ij->j", es.left.conj(), es.right), 1.0, atol=1e-10)


def test_biorthogonal_rejects_jordan_block():
    with pytest.raises(PairingError):
        eig_biorthogonal(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_spectrum_summary_hermitian(random_matrix):
    a = random_matrix(10)
    summary = spectrum_summary(eig_right(a + a.conj().T))
    assert summary.is_real
    assert summary.min_gap > 0


def test_spectrum_summary_complex_pair():
    # gamma = -1 gives E = +-i
    summary = spectrum_summary(eig_right(build_two_level(-1.0)))
    assert not summary.is_real
    np.testing.assert_allclose(summary.max_imag, 1.0)
    np.testing.assert_allclose(summary.min_gap, 2.0)


def test_residual_on_random_50x50(random_matrix):
    assert eig_right(random_matrix(50)).residual_right <= 1e-10


def test_jordan_block_returns_coalesced_vectors():
    es = eig_right(np.array([[0.0, 0.0], [1.0, 0.0]]))
    np.testing.assert_allclose(es.eigenvalues, 0.0, atol=1e-12)
    assert np.all(np.abs(es.right[0]) < 1e-7)
    np.testing.assert_allclose(np.abs(es.right[1]), 1.0)


def test_hermitian_left_vectors_equal_right(random_matrix):
    a = random_matrix(12)
    es = eig_biorthogonal(a + a.conj().T)
    assert es.biorth_residual < 1e-10
    np.testing.assert_allclose(es.left, es.right, atol=1e-10)


def test_weighted_solve_matches_dense_solve():
    ham = build_sturm_liouville_chain(1.0, 1.2, 30)
    weighted = eig_right(ham)
    dense = eig_right(ham.entries)
    np.testing.assert_allclose(weighted.eigenvalues.imag, 0.0)
    np.testing.assert_allclose(np.sort(weighted.eigenvalues.real), np.sort(dense.eigenvalues.real), atol=1e-10)
    assert weighted.residual_right < 1e-12
    assert abs(eta(weighted) - eta(dense)) < 1e-8


def test_weighted_solve_falls_back_when_not_hermitian():
    entries = np.array([[0.0, 1.0], [0.25, 0.0]])
    ham = Hamiltonian(entries=entries, labels=[(1, "A"), (1, "B")], weights=np.ones(2))
    np.testing.assert_allclose(eig_right(ham).eigenvalues, [-0.5, 0.5], atol=1e-12)


def test_weights_must_match_dimension():
    with pytest.raises(InvalidSpecError):
        Hamiltonian(entries=np.eye(2), labels=[(1, "A"), (1, "B")], weights=np.ones(3))
    with pytest.raises(InvalidSpecError):
        Hamiltonian(entries=np.eye(2), labels=[(1, "A"), (1, "B")], weights=np.array([1.0, 0.0]))

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ginibre, hermitian, seeds
from qcoherence.errors import ConvergenceFailure, IndexOutOfRange, InvalidP, NotFinite, NotHermitian, NotSquare
from qcoherence.linalg import (
    INF,
    PAULIS,
    anticommutator,
    as_matrix,
    commutator,
    entrywise_lp_norm,
    frobenius_norm,
    gell_mann_basis,
    hermitian_eig,
    hermitian_function,
    pauli,
    pauli_string,
    schatten_norm,
    singular_values,
    tensor,
)
from qcoherence.states import random_unitary


def test_eig_diagonal_and_pauli():
    w, v = hermitian_eig(np.diag([2.0, -1.0]))
    assert np.allclose(w, [-1, 2])
    assert np.allclose(np.abs(v), [[0, 1], [1, 0]])
    w, _ = hermitian_eig(pauli(1))
    assert np.allclose(w, [-1, 1], atol=1e-14)


@pytest.mark.parametrize("d", [1, 2, 3, 6, 9, 16])
def test_eig_matches_numpy_oracle(d):
    rng = np.random.default_rng(d)
    h = hermitian(rng, d)
    w, v = hermitian_eig(h)
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-11)
    scale = max(1.0, frobenius_norm(h))
    assert frobenius_norm(h @ v - v * w) < 1e-10 * scale
    assert frobenius_norm(v.conj().T @ v - np.eye(d)) < 1e-10
    assert np.all(np.diff(w) >= 0)


@given(seeds, st.integers(2, 8))
def test_eig_reconstruction_property(seed, d):
    h = hermitian(np.random.default_rng(seed), d)
    e = hermitian_eig(h)
    assert frobenius_norm(e.reconstruct() - h) < 1e-10 * max(1.0, frobenius_norm(h))


def test_eig_degenerate_and_deterministic():
    u = random_unitary(4, 3)
    h = u @ np.diag([1.0, 1.0, 2.0, 2.0]) @ u.conj().T
    a, b = hermitian_eig(h), hermitian_eig(h.copy())
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)
    assert np.allclose(a.eigenvalues, [1, 1, 2, 2])
    # phase convention: first significant component of each vector is real positive
    for col in a.eigenvectors.T:
        k = np.argmax(np.abs(col) > 1e-12)
        assert abs(col[k].imag) < 1e-15 and col[k].real > 0


def test_eig_errors():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0, 1], [0, 0]]))
    with pytest.raises(NotSquare):
        hermitian_eig(np.ones((2, 3)))
    with pytest.raises(NotFinite):
        hermitian_eig(np.array([[np.nan, 0], [0, 1]]))
    with pytest.raises(ConvergenceFailure):
        hermitian_eig(pauli(1), max_sweeps=0)


def test_as_matrix_is_read_only_copy():
    a = np.eye(2)
    m = as_matrix(a)
    a[0, 0] = 5
    assert m[0, 0] == 1
    with pytest.raises(ValueError):
        m[0, 0] = 3


def test_hermitian_function_matches_direct():
    rng = np.random.default_rng(1)
    h = hermitian(rng, 4)
    assert np.allclose(hermitian_function(h, lambda w: w ** 2), h @ h)


def test_schatten_examples():
    a = np.diag([3.0, 4.0])
    assert schatten_norm(a, 1) == pytest.approx(7)
    assert schatten_norm(a, 2) == pytest.approx(5)
    assert schatten_norm(a, INF) == pytest.approx(4)
    assert schatten_norm(np.eye(5), 2) == pytest.approx(math.sqrt(5))
    with pytest.raises(InvalidP):
        schatten_norm(a, 0.5)


@given(seeds, st.integers(2, 6))
def test_schatten_against_numpy_norms(seed, d):
    a = ginibre(np.random.default_rng(seed), d)
    assert schatten_norm(a, 1) == pytest.approx(np.linalg.norm(a, "nuc"), rel=1e-12)
    assert schatten_norm(a, 2) == pytest.approx(np.linalg.norm(a, "fro"), rel=1e-12)
    assert schatten_norm(a, INF) == pytest.approx(np.linalg.norm(a, 2), rel=1e-12)
    assert np.allclose(singular_values(a), np.linalg.svd(a, compute_uv=False))


@given(seeds, st.integers(2, 6))
def test_norm_ordering_and_holder(seed, d):
    a = ginibre(np.random.default_rng(seed), d)
    n1, n2, ninf = schatten_norm(a, 1), schatten_norm(a, 2), schatten_norm(a, INF)
    assert n1 >= n2 >= ninf
    assert n1 <= math.sqrt(d) * n2 * (1 + 1e-12)
    assert n2 <= math.sqrt(d) * ninf * (1 + 1e-12)


def test_entrywise_examples():
    assert entrywise_lp_norm(pauli(1), 1) == pytest.approx(2)
    assert entrywise_lp_norm(np.eye(2), 2) == pytest.approx(math.sqrt(2))
    assert entrywise_lp_norm(np.diag([1.0, -3.0]), INF) == pytest.approx(3)
    with pytest.raises(InvalidP):
        entrywise_lp_norm(np.eye(2), 0)


@given(seeds)
def test_entrywise_l2_is_frobenius(seed):
    a = ginibre(np.random.default_rng(seed), 4)
    assert abs(entrywise_lp_norm(a, 2) - schatten_norm(a, 2)) < 1e-12 * max(1, frobenius_norm(a))


def test_pauli_algebra():
    assert np.allclose(commutator(pauli(1), pauli(2)), 2j * pauli(3))
    assert np.allclose(anticommutator(pauli(1), pauli(1)), 2 * np.eye(2))
    assert np.allclose(tensor(np.eye(2), np.eye(2)), np.eye(4))
    assert np.allclose(pauli_string([1, 3]), np.kron(pauli(1), pauli(3)))
    assert PAULIS.shape == (4, 2, 2)
    with pytest.raises(IndexOutOfRange):
        pauli(4)


@given(seeds, st.integers(2, 6))
def test_commutator_anticommutator_identity(seed, d):
    rng = np.random.default_rng(seed)
    u, h = random_unitary(d, rng), hermitian(rng, d)
    lhs = frobenius_norm(commutator(u, h)) ** 2 + frobenius_norm(anticommutator(u, h)) ** 2
    assert lhs == pytest.approx(4 * frobenius_norm(h) ** 2, rel=1e-10)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_gell_mann_basis_orthonormal(d):
    g = gell_mann_basis(d)
    assert g.shape == (d * d, d, d)
    gram = np.einsum("aij,bij->ab", g.conj(), g)
    assert np.allclose(gram, np.eye(d * d))
    assert np.allclose(g[0], np.eye(d) / math.sqrt(d))
    for m in g:
        assert np.allclose(m, m.conj().T)

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bloch_vectors, h2, seeds, states
from qcoherence import measures as cm
from qcoherence.errors import (
    BasisNotOrthonormal,
    DimensionMismatch,
    InvalidAlpha,
    NotPSD,
    SupportViolation,
    ZeroTrace,
)
from qcoherence.states import (
    DensityMatrix,
    bloch_vector,
    from_bloch,
    maximally_mixed,
    pure_state,
    purity,
    random_density,
    random_unitary,
    von_neumann_entropy,
)

PLUS = pure_state(np.array([1, 1]) / math.sqrt(2))


def c_oracle(rho):
    # independent route: eigenvalues from numpy, not the package's Jacobi
    d = rho.dim
    w = np.linalg.eigvalsh(rho.matrix)
    return math.sqrt(d / (d - 1) * np.sum((w - 1 / d) ** 2))


def test_coherence_examples():
    for d in (2, 3, 5):
        assert cm.coherence_frobenius(maximally_mixed(d)) == pytest.approx(0, abs=1e-15)
    assert cm.coherence_frobenius(pure_state([1, 2j, -1])) == pytest.approx(1)
    assert cm.coherence_frobenius(from_bloch([0.3, 0, 0.4])) == pytest.approx(0.5)
    assert cm.coherence_frobenius(DensityMatrix(np.diag([0.5, 0.5, 0]))) == pytest.approx(0.5)
    assert cm.coherence_eigform(DensityMatrix(np.diag([1.0, 0.0]))) == pytest.approx(1)
    assert cm.coherence_eigform(DensityMatrix(np.diag([0.75, 0.25]))) == pytest.approx(0.5)


@given(states())
def test_coherence_forms_agree_with_oracle(rho):
    c = cm.coherence_frobenius(rho)
    assert abs(c - c_oracle(rho)) < 1e-10
    assert abs(cm.coherence_eigform(rho) - c) < 1e-10
    assert -1e-12 <= c <= 1 + 1e-12


@given(bloch_vectors())
def test_qubit_coherence_is_bloch_length(s):
    assert abs(cm.coherence_frobenius(from_bloch(s)) - np.linalg.norm(s)) < 1e-12


@given(seeds, st.integers(2, 5))
def test_coherence_unitary_invariance(seed, d):
    rho = random_density(d, 2, seed)
    u = random_unitary(d, seed + 1)
    rot = DensityMatrix(u @ rho.matrix @ u.conj().T)
    assert abs(cm.coherence_frobenius(rot) - cm.coherence_frobenius(rho)) < 1e-10


def test_bz_examples():
    assert cm.bz_information(maximally_mixed(3)) == pytest.approx(0, abs=1e-15)
    assert cm.bz_information(pure_state([1, 0])) == pytest.approx(0.5)
    half = from_bloch([0, 0, 0.5])
    assert cm.bz_information(half) == pytest.approx(0.125)
    assert cm.bz_information_mco(maximally_mixed(2), cm.mub_set(2)) == pytest.approx(0, abs=1e-15)
    assert cm.bz_information_mco(half, cm.mub_set(2)) == pytest.approx(0.125)
    with pytest.raises(DimensionMismatch):
        cm.bz_information_mco(half, cm.mub_set(3))
    with pytest.raises(DimensionMismatch):
        cm.mub_set(4)


@pytest.mark.parametrize("d", [2, 3])
def test_mub_sets_are_unbiased(d):
    mubs = cm.mub_set(d)
    assert len(mubs.bases) == d + 1
    for b in mubs.bases:
        assert np.allclose(b.conj().T @ b, np.eye(d), atol=1e-12)
    for i, a in enumerate(mubs.bases):
        for b in mubs.bases[i + 1:]:
            assert np.allclose(np.abs(a.conj().T @ b) ** 2, 1 / d, atol=1e-12)


@given(seeds, st.sampled_from([2, 3]))
def test_mco_sum_equals_bz(seed, d):
    rho = random_density(d, d, seed)
    assert abs(cm.bz_information_mco(rho, cm.mub_set(d)) - (purity(rho) - 1 / d)) < 1e-10


def test_polarization_examples():
    assert cm.degree_polarization_2d(np.eye(2)) == pytest.approx(0, abs=1e-12)
    assert cm.degree_polarization_2d(np.array([[3, 1], [1, 1]])) == pytest.approx(math.sqrt(0.5))
    assert cm.degree_polarization_3d(np.diag([1, 1, 0])) == pytest.approx(0.5)
    with pytest.raises(NotPSD):
        cm.degree_polarization_2d(np.diag([1.0, -0.5]))
    with pytest.raises(ZeroTrace):
        cm.degree_polarization_3d(np.zeros((3, 3)))


@given(seeds, st.sampled_from([2, 3]), st.floats(0.01, 100))
def test_polarization_equals_normalized_coherence(seed, d, scale):
    rho = random_density(d, d, seed)
    p = cm.degree_polarization_2d(scale * rho.matrix) if d == 2 else cm.degree_polarization_3d(scale * rho.matrix)
    assert abs(p - cm.coherence_frobenius(rho)) < 1e-12


def test_l1_examples():
    assert cm.c_l1(DensityMatrix(np.diag([0.2, 0.3, 0.5]))) == 0
    assert cm.c_l1(PLUS) == pytest.approx(1)
    assert cm.c_l1(from_bloch([0.6, 0, 0.3])) == pytest.approx(0.6)
    with pytest.raises(BasisNotOrthonormal):
        cm.c_l1(PLUS, np.array([[1, 1], [0, 1]]))


def test_l1_is_basis_dependent_but_c_is_not():
    rho = DensityMatrix(np.diag([0.8, 0.2]))
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    assert cm.c_l1(rho) == 0
    assert cm.c_l1(rho, h) == pytest.approx(0.6)


@given(seeds, st.integers(2, 5))
def test_l1_bound(seed, d):
    rho = random_density(d, 2, seed)
    basis = random_unitary(d, seed ^ 0xABCD)
    val = cm.c_l1(rho, basis)
    assert val <= math.sqrt(d * (d - 1)) * cm.coherence_frobenius(rho) + 1e-10
    assert val <= d - 1 + 1e-10


def test_trace_qubit_examples():
    assert cm.c_trace_qubit(DensityMatrix(np.diag([0.7, 0.3]))) == 0
    assert cm.c_trace_qubit(PLUS) == pytest.approx(1)
    with pytest.raises(DimensionMismatch):
        cm.c_trace_qubit(maximally_mixed(3))


@given(bloch_vectors())
def test_trace_qubit_equals_l1(s):
    rho = from_bloch(s)
    assert abs(cm.c_trace_qubit(rho) - cm.c_l1(rho)) < 1e-12


@given(states())
def test_trace_chain(rho):
    chain = cm.trace_bound_chain(rho)
    assert chain.trace_distance <= chain.frobenius_bound + 1e-10
    if chain.c_tr is not None:
        assert chain.c_tr <= chain.trace_distance + 1e-10
        assert chain.c_tr <= chain.maximum + 1e-10


@pytest.mark.parametrize("d", [2, 3, 4])
def test_maximally_coherent_maxima(d):
    mc = cm.maximally_coherent_state(d)
    assert abs(cm.c_l1(mc) - (d - 1)) < 1e-10
    assert abs(cm.trace_distance_to_mixed(mc) - 2 * (1 - 1 / d)) < 1e-10


def test_relent_examples():
    assert cm.c_relent_qubit(DensityMatrix(np.diag([0.7, 0.3]))) == pytest.approx(0, abs=1e-12)
    assert cm.c_relent_qubit(PLUS) == pytest.approx(1)
    rho = from_bloch([0.6, 0, 0.3])
    closed = h2(0.65) - h2(0.5 + math.sqrt(0.45) / 2)
    definition = von_neumann_entropy(DensityMatrix(np.diag(np.diag(rho.matrix).real)), 2) - von_neumann_entropy(rho, 2)
    assert cm.c_relent_qubit(rho) == pytest.approx(closed, abs=1e-10)
    assert closed == pytest.approx(definition, abs=1e-10)
    with pytest.raises(DimensionMismatch):
        cm.c_relent_qubit(maximally_mixed(4))


def test_alpha_divergence_examples():
    rho = from_bloch([0.5, 0, 0])
    for a in (0.3, 0.5, 2.0, 3.5):
        assert cm.alpha_divergence(rho, rho, a) == pytest.approx(0, abs=1e-12)
    assert cm.alpha_divergence(rho, maximally_mixed(2), 2.0) == pytest.approx(0.25)
    for bad in (1.0, 0.0, -1.0):
        with pytest.raises(InvalidAlpha):
            cm.alpha_divergence(rho, rho, bad)
    with pytest.raises(SupportViolation):
        cm.alpha_divergence(maximally_mixed(2), pure_state([1, 0]), 2.0)
    with pytest.raises(DimensionMismatch):
        cm.alpha_divergence(rho, maximally_mixed(3), 2.0)


@given(seeds, st.integers(2, 4))
def test_d2_identity(seed, d):
    rho = random_density(d, 2, seed)
    c = cm.coherence_frobenius(rho)
    assert abs(cm.alpha_divergence(rho, maximally_mixed(d), 2.0) - (d - 1) * c * c) < 1e-10


@given(states(full_rank=True), st.sampled_from([0.25, 0.5, 0.9, 1.5, 2.0]))
def test_alpha_divergence_nonnegative(rho, alpha):
    sigma = random_density(rho.dim, rho.dim, 99)
    assert cm.alpha_divergence(rho, sigma, alpha) >= -1e-12


def test_info_bound_examples():
    rep = cm.check_info_bound(maximally_mixed(3))
    assert rep.lhs == pytest.approx(0, abs=1e-15) and rep.rhs == pytest.approx(0, abs=1e-12)
    rep = cm.check_info_bound(DensityMatrix(np.diag([0.9, 0.1])))
    assert rep.lhs == pytest.approx(0.16)
    assert rep.rhs == pytest.approx(1 - h2(0.9))
    assert rep.holds()


@given(seeds, st.integers(2, 4))
def test_info_bound_holds(seed, d):
    assert cm.check_info_bound(random_density(d, int(seed % d) + 1, seed)).slack >= -1e-10

"""State functionals: the Frobenius coherence C(rho), Brukner-Zeilinger
information, polarization degrees, basis-dependent coherences, the
alpha-divergence and the purity/information bound."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import get_tolerances
from .errors import (
    BasisNotOrthonormal,
    DimensionMismatch,
    InvalidAlpha,
    NotPSD,
    SupportViolation,
    ZeroTrace,
)
from .linalg import as_matrix, dagger, frobenius_norm, hermiticity_defect, hermitian_eig, schatten_norm
from .states import DensityMatrix, as_state, bloch_vector, purity, von_neumann_entropy


def _deviation_from_mixed(rho: DensityMatrix) -> np.ndarray:
    return rho.matrix - np.eye(rho.dim) / rho.dim


def coherence_frobenius(rho) -> float:
    """C(rho) = sqrt(d/(d-1)) * ||rho - I/d||_F, in [0, 1]."""
    rho = as_state(rho)
    d = rho.dim
    return math.sqrt(d / (d - 1)) * frobenius_norm(_deviation_from_mixed(rho))


def coherence_eigform(rho) -> float:
    """C(rho) from the spectrum: sqrt(1/(2(d-1)) * sum_jk (l_j - l_k)^2)."""
    rho = as_state(rho)
    lam = rho.eigenvalues
    d = rho.dim
    pair_sum = float(np.sum((lam[:, None] - lam[None, :]) ** 2))
    return math.sqrt(pair_sum / (2 * (d - 1)))


def bz_information(rho) -> float:
    """Brukner-Zeilinger invariant information Tr(rho^2) - 1/d."""
    rho = as_state(rho)
    return purity(rho) - 1.0 / rho.dim


def check_basis(basis, d: int | None = None) -> np.ndarray:
    """Validate a basis given as a matrix whose columns are the vectors."""
    b = as_matrix(basis)
    if d is not None and b.shape[0] != d:
        raise DimensionMismatch(f"basis has dimension {b.shape[0]}, expected {d}")
    defect = frobenius_norm(dagger(b) @ b - np.eye(b.shape[0]))
    if defect > get_tolerances().orthonormal:
        raise BasisNotOrthonormal(f"||B^dag B - I||_F = {defect:.3e}")
    return b


@dataclass(frozen=True)
class MubSet:
    """d+1 mutually unbiased bases; each entry has its vectors as columns."""

    d: int
    bases: tuple

    def __post_init__(self):
        if len(self.bases) != self.d + 1:
            raise DimensionMismatch(f"need {self.d + 1} bases, got {len(self.bases)}")
        bases = tuple(check_basis(b, self.d) for b in self.bases)
        for i in range(len(bases)):
            for j in range(i + 1, len(bases)):
                overlaps = np.abs(dagger(bases[i]) @ bases[j]) ** 2
                if np.max(np.abs(overlaps - 1.0 / self.d)) > 1e-12:
                    raise BasisNotOrthonormal(f"bases {i} and {j} are not mutually unbiased")
        object.__setattr__(self, "bases", bases)

    def projector_probabilities(self, rho: DensityMatrix) -> np.ndarray:
        """Tr(Pi_ij rho), shape (d+1, d)."""
        return np.array([np.real(np.einsum("ki,kl,li->i", b.conj(), rho.matrix, b)) for b in self.bases])


def mub_set(d: int) -> MubSet:
    """Standard complete MUB set for d = 2 (Pauli eigenbases) or d = 3."""
    if d == 2:
        s = 1 / math.sqrt(2)
        z = np.eye(2, dtype=complex)
        x = np.array([[s, s], [s, -s]], dtype=complex)
        y = np.array([[s, s], [1j * s, -1j * s]], dtype=complex)
        return MubSet(2, (z, x, y))
    if d == 3:
        w = np.exp(2j * math.pi / 3)
        n = np.arange(3)
        bases = [np.eye(3, dtype=complex)]
        for k in range(3):
            # vector j: components w^(k n^2 + j n) / sqrt(3)
            cols = [w ** (k * n * n + j * n) / math.sqrt(3) for j in range(3)]
            bases.append(np.stack(cols, axis=1))
        return MubSet(3, tuple(bases))
    raise DimensionMismatch(f"MUB sets are provided for d in {{2, 3}}, got {d}")


def bz_information_mco(rho, mubs: MubSet) -> float:
    """sum_i sum_j (Tr(Pi_ij rho) - 1/d)^2 over a complete MUB set."""
    rho = as_state(rho)
    if mubs.d != rho.dim:
        raise DimensionMismatch(f"MUB set is for d={mubs.d}, state has d={rho.dim}")
    probs = mubs.projector_probabilities(rho)
    return float(np.sum((probs - 1.0 / rho.dim) ** 2))


def _coherence_matrix_spectrum(phi, d: int) -> np.ndarray:
    m = as_matrix(phi)
    if m.shape[0] != d:
        raise DimensionMismatch(f"expected a {d}x{d} coherence matrix, got {m.shape}")
    if hermiticity_defect(m) > get_tolerances().hermitian:
        raise NotPSD("coherence matrix is not Hermitian")
    lam = hermitian_eig(m).eigenvalues
    tr = float(np.sum(lam))
    if lam[0] < -get_tolerances().psd * max(1.0, abs(tr)):
        raise NotPSD(f"coherence matrix has negative eigenvalue {lam[0]:.3e}")
    if tr <= 0:
        raise ZeroTrace("coherence matrix has zero trace")
    return np.clip(lam, 0.0, None)


def degree_polarization_2d(phi) -> float:
    """sqrt(1 - 4 det(Phi) / Tr(Phi)^2) for a planar 2x2 coherence matrix."""
    lam = _coherence_matrix_spectrum(phi, 2)
    det, tr = lam[0] * lam[1], lam[0] + lam[1]
    return math.sqrt(max(1.0 - 4.0 * det / tr ** 2, 0.0))


def degree_polarization_3d(phi) -> float:
    """sqrt(3/2 * (Tr(Phi^2)/Tr(Phi)^2 - 1/3)) for a 3x3 coherence matrix."""
    lam = _coherence_matrix_spectrum(phi, 3)
    ratio = float(np.sum(lam ** 2)) / float(np.sum(lam)) ** 2
    return math.sqrt(max(1.5 * (ratio - 1.0 / 3.0), 0.0))


def c_l1(rho, basis=None) -> float:
    """l1-norm coherence: sum of |off-diagonal| entries in ``basis``
    (columns; default computational)."""
    rho = as_state(rho)
    m = rho.matrix
    if basis is not None:
        b = check_basis(basis, rho.dim)
        m = dagger(b) @ m @ b
    a = np.abs(m)
    return float(np.sum(a) - np.sum(np.diag(a)))


def c_trace_qubit(rho) -> float:
    """Trace-norm coherence of a qubit, sqrt(s1^2 + s2^2)."""
    s = bloch_vector(rho).s
    return math.hypot(s[0], s[1])


def trace_distance_to_mixed(rho) -> float:
    """||rho - I/d||_1, the upper-bound term of the trace-norm coherence."""
    rho = as_state(rho)
    return schatten_norm(_deviation_from_mixed(rho), 1)


def binary_entropy(x: float) -> float:
    """h(x) in bits."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def c_relent_qubit(rho) -> float:
    """Relative entropy of coherence for a qubit, in bits:
    h((1+s3)/2) - h((1+|s|)/2)."""
    s = bloch_vector(rho)
    return binary_entropy((1 + s.s[2]) / 2) - binary_entropy((1 + min(s.norm, 1.0)) / 2)


def alpha_divergence(rho, sigma, alpha: float) -> float:
    """D_alpha(rho||sigma) = (Tr(rho^a sigma^(1-a)) - 1) / (a - 1), which is
    nonnegative for both alpha ranges and vanishes only at rho = sigma."""
    rho, sigma = as_state(rho), as_state(sigma)
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions {rho.dim} and {sigma.dim} differ")
    alpha = float(alpha)
    if not alpha > 0 or alpha == 1 or math.isinf(alpha):
        raise InvalidAlpha(f"alpha must lie in (0,1) or (1,inf), got {alpha}")
    if alpha > 1:
        tol = get_tolerances()
        ws, vs = sigma.eig
        weights = np.real(np.einsum("ik,ij,jk->k", vs.conj(), rho.matrix, vs))
        if np.any(weights[ws < tol.support_cutoff] > tol.support_weight):
            raise SupportViolation("supp(rho) is not contained in supp(sigma)")
    a = rho.power(alpha)
    b = sigma.power(1 - alpha, support_only=alpha > 1)
    q = float(np.real(np.trace(a @ b)))
    return (q - 1.0) / (alpha - 1.0)


class BoundReport(NamedTuple):
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def holds(self, tol: float = 1e-10) -> bool:
        return self.slack >= -tol


def check_info_bound(rho) -> BoundReport:
    """I_BZ(rho)/2 <= log2(d) - S_2(rho)."""
    rho = as_state(rho)
    lhs = bz_information(rho) / 2
    rhs = math.log2(rho.dim) - von_neumann_entropy(rho, base=2)
    return BoundReport(lhs, rhs)


class TraceChain(NamedTuple):
    """C_tr <= ||rho - I/d||_1 <= sqrt(d-1) C(rho); C_tr only known for d=2."""

    c_tr: float | None
    trace_distance: float
    frobenius_bound: float
    maximum: float


def trace_bound_chain(rho) -> TraceChain:
    rho = as_state(rho)
    d = rho.dim
    ctr = c_trace_qubit(rho) if d == 2 else None
    return TraceChain(
        ctr,
        trace_distance_to_mixed(rho),
        math.sqrt(d - 1) * coherence_frobenius(rho),
        2 * (1 - 1 / d),
    )


def maximally_coherent_state(d: int) -> DensityMatrix:
    psi = np.ones(d, dtype=complex) / math.sqrt(d)
    return DensityMatrix(np.outer(psi, psi.conj()))

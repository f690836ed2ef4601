"""Density matrices, Bloch vectors, Pauli correlation tensors, entropies and
seeded random states."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .config import get_tolerances
from .errors import (
    BlochOutOfBall,
    DimensionMismatch,
    InvalidRank,
    NotAState,
    NotPowerOfTwo,
    SupportViolation,
)
from .linalg import (
    PAULIS,
    EigenDecomposition,
    as_matrix,
    dagger,
    hermiticity_defect,
    hermitian_eig,
    is_power_of_two,
)
from .rng import as_generator


class DensityMatrix:
    """A validated quantum state: Hermitian, unit trace, positive semidefinite.

    The matrix is stored read-only. Its eigendecomposition is computed once
    during validation and reused by entropies and matrix functions.
    """

    __slots__ = ("matrix", "dim", "_eig")

    def __init__(self, matrix):
        tol = get_tolerances()
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotAState(f"density matrix must be square, got shape {m.shape}")
        d = m.shape[0]
        if d < 2:
            raise NotAState("dimension must be at least 2")
        if not np.all(np.isfinite(m)):
            raise NotAState("matrix has NaN or Inf entries")
        herm = hermiticity_defect(m)
        if herm > tol.hermitian:
            raise NotAState(f"not Hermitian: max |rho - rho^dag| = {herm:.3e}")
        tr = np.trace(m).real
        if abs(tr - 1) > tol.trace:
            raise NotAState(f"trace is {float(tr):.12g}, expected 1")
        m = 0.5 * (m + dagger(m))
        eig = hermitian_eig(m)
        if eig.eigenvalues[0] < -tol.psd:
            raise NotAState(f"not positive semidefinite: min eigenvalue {eig.eigenvalues[0]:.3e}")
        m.setflags(write=False)
        self.matrix = m
        self.dim = d
        self._eig = eig

    @property
    def eig(self) -> EigenDecomposition:
        return self._eig

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eig.eigenvalues

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"

    def power(self, alpha: float, support_only: bool = False) -> np.ndarray:
        """rho**alpha from the spectrum; with ``support_only`` zero eigenvalues
        stay zero even for negative alpha."""
        w, v = self._eig
        w = np.clip(w, 0.0, None)
        cutoff = get_tolerances().support_cutoff
        out = np.zeros_like(w)
        keep = w > cutoff if (support_only or alpha <= 0) else np.ones_like(w, dtype=bool)
        out[keep] = w[keep] ** alpha
        return (v * out) @ dagger(v)


def maximally_mixed(d: int) -> DensityMatrix:
    return DensityMatrix(np.eye(d) / d)


def pure_state(psi) -> DensityMatrix:
    psi = np.asarray(psi, dtype=complex).ravel()
    psi = psi / np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()))


def as_state(rho) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def purity(rho: DensityMatrix) -> float:
    m = as_state(rho).matrix
    # Tr(rho^2) = ||rho||_F^2 for Hermitian rho
    return float(np.sum(np.abs(m) ** 2))


def _log(x: np.ndarray, base) -> np.ndarray:
    if base == 2:
        return np.log2(x)
    if base in ("e", math.e, None):
        return np.log(x)
    return np.log(x) / math.log(base)


def shannon_entropy(p, base="e") -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > get_tolerances().entropy_cutoff]
    return float(max(-np.sum(p * _log(p, base)), 0.0))


def von_neumann_entropy(rho: DensityMatrix, base="e") -> float:
    """-Tr(rho log rho) with 0 log 0 = 0; ``base`` is ``"e"`` or ``2``."""
    return shannon_entropy(as_state(rho).eigenvalues, base)


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix, base="e") -> float:
    """S(rho||sigma) = Tr(rho log rho - rho log sigma).

    Raises SupportViolation when rho has weight outside the support of sigma
    (the value is +inf there).
    """
    rho, sigma = as_state(rho), as_state(sigma)
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions {rho.dim} and {sigma.dim} differ")
    tol = get_tolerances()
    ws, vs = sigma.eig
    # weight of rho along each eigenvector of sigma
    weights = np.real(np.einsum("ik,ij,jk->k", vs.conj(), rho.matrix, vs))
    outside = ws < tol.support_cutoff
    if np.any(weights[outside] > tol.support_weight):
        raise SupportViolation("supp(rho) is not contained in supp(sigma)")
    inside = ~outside
    cross = float(np.sum(weights[inside] * _log(ws[inside], base)))
    value = -von_neumann_entropy(rho, base) - cross
    return value


@dataclass(frozen=True)
class BlochVector:
    s: np.ndarray

    def __post_init__(self):
        s = np.array(self.s, dtype=float).reshape(3)
        if np.linalg.norm(s) > 1 + get_tolerances().bloch:
            raise BlochOutOfBall(f"|s| = {np.linalg.norm(s):.6g} > 1")
        s.setflags(write=False)
        object.__setattr__(self, "s", s)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.s))


def bloch_vector(rho: DensityMatrix) -> BlochVector:
    rho = as_state(rho)
    if rho.dim != 2:
        raise DimensionMismatch(f"Bloch vectors need d=2, got d={rho.dim}")
    s = np.real(np.einsum("kij,ji->k", PAULIS[1:], rho.matrix))
    return BlochVector(s)


def from_bloch(s) -> DensityMatrix:
    if not isinstance(s, BlochVector):
        s = BlochVector(s)
    m = 0.5 * (PAULIS[0] + np.einsum("k,kij->ij", s.s, PAULIS[1:]))
    return DensityMatrix(m)


@dataclass(frozen=True)
class CorrelationTensor:
    """Real Pauli coefficients T[x1,...,xN] with
    rho = 2^-N sum_x T[x] sigma_x1 (x) ... (x) sigma_xN."""

    n_qubits: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (4,) * self.n_qubits:
            raise DimensionMismatch(f"expected shape {(4,) * self.n_qubits}, got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __getitem__(self, idx):
        return self.values[idx]

    def diagonal(self) -> np.ndarray:
        """T_ii for i = 1..3 (two qubits only)."""
        if self.n_qubits != 2:
            raise DimensionMismatch("diagonal() is defined for two qubits")
        return np.array([self.values[i, i] for i in (1, 2, 3)])


def _n_qubits(d: int) -> int:
    if not is_power_of_two(d) or d < 2:
        raise NotPowerOfTwo(f"dimension {d} is not a power of two")
    return d.bit_length() - 1


def _pauli_einsum_spec(n: int):
    # rho indices: rows a_k, cols b_k; Pauli k: P[x_k, b_k, a_k] for Tr(rho sigma)
    letters = iter("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
    rows = [next(letters) for _ in range(n)]
    cols = [next(letters) for _ in range(n)]
    xs = [next(letters) for _ in range(n)]
    return rows, cols, xs


def correlation_tensor(rho: DensityMatrix) -> CorrelationTensor:
    rho = as_state(rho)
    n = _n_qubits(rho.dim)
    rows, cols, xs = _pauli_einsum_spec(n)
    t = rho.matrix.reshape((2,) * (2 * n))
    terms = ["".join(rows + cols)] + [f"{x}{c}{r}" for r, c, x in zip(rows, cols, xs)]
    spec = ",".join(terms) + "->" + "".join(xs)
    vals = np.einsum(spec, t, *([PAULIS] * n), optimize=True)
    return CorrelationTensor(n, np.real(vals))


def from_tensor(tensor: CorrelationTensor) -> DensityMatrix:
    """Rebuild rho from its correlation tensor; NotAState if not positive."""
    n = tensor.n_qubits
    rows, cols, xs = _pauli_einsum_spec(n)
    terms = ["".join(xs)] + [f"{x}{r}{c}" for r, c, x in zip(rows, cols, xs)]
    spec = ",".join(terms) + "->" + "".join(rows + cols)
    m = np.einsum(spec, tensor.values.astype(complex), *([PAULIS] * n), optimize=True)
    return DensityMatrix(m.reshape(2 ** n, 2 ** n) / 2 ** n)


def pauli_indices(n: int):
    return itertools.product(range(4), repeat=n)


# -- random generation -------------------------------------------------------

def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / math.sqrt(2)


def random_unitary(d: int, seed) -> np.ndarray:
    """Haar-random unitary: QR of a Ginibre matrix with R's diagonal made
    real positive."""
    rng = as_generator(seed, "states")
    q, r = np.linalg.qr(_ginibre(rng, d, d))
    diag = np.diag(r)
    q = q * (diag / np.abs(diag))
    return as_matrix(q)


def random_pure(d: int, seed) -> DensityMatrix:
    rng = as_generator(seed, "states")
    psi = _ginibre(rng, d, 1).ravel()
    return pure_state(psi)


def random_density(d: int, rank: int, seed) -> DensityMatrix:
    """Hilbert-Schmidt-induced state G G^dag / Tr(G G^dag), G of size d x rank."""
    if not 1 <= rank <= d:
        raise InvalidRank(f"rank must be in [1, {d}], got {rank}")
    rng = as_generator(seed, "states")
    g = _ginibre(rng, d, rank)
    m = g @ dagger(g)
    return DensityMatrix(m / np.trace(m).real)

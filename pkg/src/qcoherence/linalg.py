"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Functions that
return matrices hand back read-only arrays so values can be shared freely.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np

from .config import get_tolerances
from .errors import (
    ConvergenceFailure,
    IndexOutOfRange,
    InvalidP,
    NotFinite,
    NotHermitian,
    NotSquare,
)

INF = math.inf


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_matrix(a, copy: bool = True) -> np.ndarray:
    """Validate ``a`` as a finite square complex matrix and return it."""
    m = np.array(a, dtype=complex, copy=copy)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise NotSquare(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotFinite("matrix has NaN or Inf entries")
    return _frozen(m)


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def hermiticity_defect(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - dagger(a))))


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray   # real, ascending
    eigenvectors: np.ndarray  # unitary, columns

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)


def _jacobi_sweeps(a: np.ndarray, max_sweeps: int):
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(float(np.linalg.norm(a)), np.finfo(float).tiny)
    # elements at or below one ulp of the matrix scale are treated as zero;
    # a sweep that rotates nothing means convergence
    threshold = np.finfo(float).eps * scale
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= threshold:
                    continue
                rotated = True
                phase = np.conj(apq) / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # J = diag(1, e^{-i phi}) @ [[c, s], [-s, c]] on coordinates (p, q)
                j = np.array([[c, s], [-s * phase, c * phase]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ j
                a[idx, :] = dagger(j) @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ j
        if not rotated:
            return a, v
    raise ConvergenceFailure(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def _canonical_order(w: np.ndarray, v: np.ndarray, scale: float):
    # phase-normalize: first non-negligible component real positive
    mags = np.empty(len(w))
    for k in range(v.shape[1]):
        col = v[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        i0 = nz[0] if len(nz) else 0
        if abs(col[i0]) > 0:
            v[:, k] = col * (abs(col[i0]) / col[i0])
        mags[k] = abs(v[i0, k])
    order = list(np.argsort(w, kind="stable"))
    tie = 1e-12 * max(1.0, scale)
    out = []
    i = 0
    while i < len(order):
        j = i + 1
        while j < len(order) and w[order[j]] - w[order[j - 1]] <= tie:
            j += 1
        group = sorted(order[i:j], key=lambda k: -mags[k])
        out.extend(group)
        i = j
    out = np.array(out, dtype=int)
    return w[out], v[:, out]


def hermitian_eig(a, max_sweeps: int | None = None) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Eigenvalues come back ascending. Each eigenvector is phase-normalized so
    that its first non-negligible component is real and positive; numerically
    tied eigenvalues are ordered by descending magnitude of that component.
    """
    m = as_matrix(a)
    if hermiticity_defect(m) > get_tolerances().hermitian:
        raise NotHermitian(f"max |A - A^dag| = {hermiticity_defect(m):.3e}")
    n = m.shape[0]
    work = 0.5 * (m + dagger(m))
    if max_sweeps is None:
        max_sweeps = 100 * n * n
    work, v = _jacobi_sweeps(np.array(work), max_sweeps)
    w = np.real(np.diag(work)).copy()
    w, v = _canonical_order(w, v, float(np.linalg.norm(m)))
    return EigenDecomposition(_frozen(w), _frozen(v))


def eigvalsh(a) -> np.ndarray:
    return hermitian_eig(a).eigenvalues


def hermitian_function(a, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """V f(L) V^dag for Hermitian ``a``."""
    w, v = hermitian_eig(a)
    return _frozen((v * f(w)) @ dagger(v))


def frobenius_norm(a) -> float:
    return float(np.sqrt(np.sum(np.abs(np.asarray(a)) ** 2)))


def singular_values(a) -> np.ndarray:
    return np.linalg.svd(as_matrix(a), compute_uv=False)


def _check_p(p: float) -> float:
    p = float(p)
    if math.isnan(p) or p < 1:
        raise InvalidP(f"norm order must be >= 1, got {p}")
    return p


def _vector_p_norm(x: np.ndarray, p: float) -> float:
    if p == INF:
        return float(np.max(x)) if x.size else 0.0
    if p == 1:
        return float(np.sum(x))
    m = float(np.max(x)) if x.size else 0.0
    if m == 0:
        return 0.0
    # scale first to keep large p from overflowing
    return m * float(np.sum((x / m) ** p)) ** (1.0 / p)


def schatten_norm(a, p: float) -> float:
    """Schatten-p norm; pass ``p=math.inf`` for the operator norm."""
    p = _check_p(p)
    return _vector_p_norm(singular_values(a), p)


def entrywise_lp_norm(a, p: float) -> float:
    p = _check_p(p)
    m = as_matrix(a)
    return _vector_p_norm(np.abs(m).ravel(), p)


_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
for _m in _PAULI:
    _m.setflags(write=False)
PAULIS = np.stack(_PAULI)
PAULIS.setflags(write=False)


def pauli(x: int) -> np.ndarray:
    """sigma_x for x in 0..3, with sigma_0 the identity."""
    if not isinstance(x, (int, np.integer)) or not 0 <= x <= 3:
        raise IndexOutOfRange(f"Pauli index must be 0..3, got {x!r}")
    return _PAULI[int(x)]


def pauli_string(xs) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for x in xs:
        out = np.kron(out, pauli(x))
    return _frozen(out)


def tensor(*mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, as_matrix(m))
    return _frozen(out)


def commutator(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    return a @ b + b @ a


@lru_cache(maxsize=32)
def gell_mann_basis(d: int) -> np.ndarray:
    """Orthonormal Hermitian operator basis, shape ``(d*d, d, d)``.

    Element 0 is I/sqrt(d); the rest are the traceless generalized Gell-Mann
    matrices scaled so that Tr(G_a G_b) = delta_ab.
    """
    mats = [np.eye(d, dtype=complex) / math.sqrt(d)]
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d), dtype=complex)
            s[j, k] = s[k, j] = 1 / math.sqrt(2)
            a = np.zeros((d, d), dtype=complex)
            a[j, k], a[k, j] = -1j / math.sqrt(2), 1j / math.sqrt(2)
            mats.extend([s, a])
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        mats.append(np.diag(diag / math.sqrt(l * (l + 1))).astype(complex))
    return _frozen(np.stack(mats))


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0

"""Kraus channels: application, unitality, cohering power, a small zoo of
standard channels, spectral gaps and entropy-production checks."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .config import get_tolerances
from .errors import (
    DimensionMismatch,
    NotTracePreserving,
    NotUnital,
    ParameterOutOfRange,
)
from .linalg import (
    as_matrix,
    dagger,
    frobenius_norm,
    gell_mann_basis,
    hermitian_eig,
    schatten_norm,
)
from .measures import check_basis
from .rng import as_generator
from .states import DensityMatrix, as_state, relative_entropy, von_neumann_entropy


class KrausChannel:
    """CPTP map rho -> sum_mu K_mu rho K_mu^dag on a d-dimensional space."""

    __slots__ = ("dim", "kraus", "tp_residual")

    def __init__(self, kraus: Sequence):
        ops = [as_matrix(k) for k in kraus]
        if not ops:
            raise DimensionMismatch("a channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        if any(k.shape != (d, d) for k in ops):
            raise DimensionMismatch("Kraus operators must all be d x d")
        stack = np.stack(ops)
        stack.setflags(write=False)
        residual = frobenius_norm(np.einsum("kji,kjl->il", stack.conj(), stack) - np.eye(d))
        if residual > get_tolerances().trace_preserving:
            raise NotTracePreserving(f"||sum K^dag K - I||_F = {residual:.3e}")
        self.dim = d
        self.kraus = stack
        self.tp_residual = residual

    def __len__(self):
        return len(self.kraus)

    def __repr__(self):
        return f"KrausChannel(dim={self.dim}, n_kraus={len(self.kraus)})"

    def apply_matrix(self, m) -> np.ndarray:
        """Apply to any d x d operator without state validation."""
        m = np.asarray(m)
        return np.einsum("kij,jl,kml->im", self.kraus, m, self.kraus.conj())

    def __call__(self, rho) -> DensityMatrix:
        return apply(self, rho)


def apply(channel: KrausChannel, rho) -> DensityMatrix:
    rho = as_state(rho)
    if rho.dim != channel.dim:
        raise DimensionMismatch(f"channel acts on d={channel.dim}, state has d={rho.dim}")
    return DensityMatrix(channel.apply_matrix(rho.matrix))


class UnitalityReport(NamedTuple):
    unital: bool
    residual: float

    def __bool__(self):
        return self.unital


def _image_of_mixed(channel: KrausChannel) -> np.ndarray:
    d = channel.dim
    return channel.apply_matrix(np.eye(d) / d)


def is_unital(channel: KrausChannel, tol: float | None = None) -> UnitalityReport:
    tol = get_tolerances().unital if tol is None else tol
    d = channel.dim
    residual = frobenius_norm(_image_of_mixed(channel) - np.eye(d) / d)
    return UnitalityReport(residual < tol, residual)


def cohering_power(channel: KrausChannel) -> float:
    """sqrt(d/(d-1)) * ||E(I/d) - I/d||_F."""
    d = channel.dim
    return math.sqrt(d / (d - 1)) * frobenius_norm(_image_of_mixed(channel) - np.eye(d) / d)


def cohering_power_commutator(channel: KrausChannel) -> float:
    """Same quantity from the Kraus operators:
    sqrt(Tr[(sum_mu [K_mu, K_mu^dag])^2] / (d(d-1)))."""
    d = channel.dim
    k = channel.kraus
    kd = dagger(k)
    c = np.sum(k @ kd - kd @ k, axis=0)
    value = float(np.real(np.trace(c @ c)))
    return math.sqrt(max(value, 0.0) / (d * (d - 1)))


# -- standard channels -------------------------------------------------------

def _check_unit(name: str, x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ParameterOutOfRange(f"{name} must lie in [0, 1], got {x}")
    return x


def weyl_operators(d: int) -> list[np.ndarray]:
    """Generalized Paulis X^a Z^b; for d=2 these are I, Z, X, XZ."""
    x = np.roll(np.eye(d), 1, axis=0).astype(complex)
    z = np.diag(np.exp(2j * math.pi * np.arange(d) / d))
    return [np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b) for a in range(d) for b in range(d)]


def depolarizing(p: float, d: int = 2) -> KrausChannel:
    """rho -> (1-p) rho + p I/d."""
    p = _check_unit("p", p)
    ops = weyl_operators(d)
    kraus = [math.sqrt(1 - p + p / d ** 2) * ops[0]]
    kraus += [math.sqrt(p) / d * w for w in ops[1:]]
    return KrausChannel(kraus)


def phase_damping(lam: float, d: int = 2) -> KrausChannel:
    """Off-diagonal entries shrink by sqrt(1-lam); diagonal untouched.

    Realized as q*rho + (1-q)*Delta(rho) with q = sqrt(1-lam), which for d=2
    is the same map as the textbook pair diag(1, sqrt(1-lam)), diag(0, sqrt(lam)).
    """
    lam = _check_unit("lambda", lam)
    q = math.sqrt(1 - lam)
    kraus = [math.sqrt(q) * np.eye(d)]
    for k in range(d):
        e = np.zeros((d, d))
        e[k, k] = math.sqrt(1 - q)
        kraus.append(e)
    return KrausChannel(kraus)


def amplitude_damping(gamma: float, d: int = 2) -> KrausChannel:
    """K0 = diag(1, sqrt(1-g), ...), K_k = sqrt(g)|0><k| for k >= 1."""
    gamma = _check_unit("gamma", gamma)
    k0 = np.diag([1.0] + [math.sqrt(1 - gamma)] * (d - 1))
    kraus = [k0]
    for k in range(1, d):
        e = np.zeros((d, d))
        e[0, k] = math.sqrt(gamma)
        kraus.append(e)
    return KrausChannel(kraus)


def unitary_channel(u) -> KrausChannel:
    return KrausChannel([u])


def projective_measurement(basis) -> KrausChannel:
    """rho -> sum_k Pi_k rho Pi_k for the basis given as columns."""
    b = check_basis(basis)
    return KrausChannel([np.outer(b[:, k], b[:, k].conj()) for k in range(b.shape[1])])


def measurement_basis(channel: KrausChannel, tol: float = 1e-10) -> np.ndarray | None:
    """Columns |phi_k> if every Kraus operator is a rank-one projector
    |phi_k><phi_k| (a complete projective measurement), else None."""
    d = channel.dim
    if len(channel.kraus) != d:
        return None
    cols = []
    for k in channel.kraus:
        if np.max(np.abs(k - dagger(k))) > tol or np.max(np.abs(k @ k - k)) > tol:
            return None
        if abs(np.trace(k).real - 1) > tol:
            return None
        w, v = hermitian_eig(k)
        cols.append(v[:, -1])
    b = np.stack(cols, axis=1)
    if frobenius_norm(dagger(b) @ b - np.eye(d)) > 1e-8:
        return None
    return b


def hadamard_basis(d: int = 2) -> np.ndarray:
    """Fourier basis, mutually unbiased to the computational one."""
    n = np.arange(d)
    return np.exp(2j * math.pi * np.outer(n, n) / d) / math.sqrt(d)


_KINDS = {
    "depolarizing": ("p", depolarizing),
    "phase_damping": ("lam", phase_damping),
    "amplitude_damping": ("gamma", amplitude_damping),
}


def standard_channel(kind: str, d: int = 2, **params) -> KrausChannel:
    """Build a named channel: depolarizing(p), phase_damping(lam),
    amplitude_damping(gamma), unitary(u), projective_measurement(basis)."""
    if kind in _KINDS:
        name, ctor = _KINDS[kind]
        return ctor(params[name], d)
    if kind == "unitary":
        return unitary_channel(params["u"])
    if kind == "projective_measurement":
        basis = params.get("basis")
        return projective_measurement(np.eye(d) if basis is None else basis)
    raise ValueError(f"unknown channel kind {kind!r}")


# -- spectral gaps ------------------------------------------------------------

@dataclass(frozen=True)
class OverlapMatrix:
    """M[k, l] = |<phi_k|l>|^2 between a measurement basis and an eigenbasis."""

    d: int
    m: np.ndarray

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        if m.shape != (self.d, self.d):
            raise DimensionMismatch(f"overlap matrix must be {self.d}x{self.d}")
        if np.any(m < -1e-12) or np.any(m > 1 + 1e-12):
            raise ParameterOutOfRange("overlap entries must lie in [0, 1]")
        if np.max(np.abs(m.sum(axis=0) - 1)) > 1e-10 or np.max(np.abs(m.sum(axis=1) - 1)) > 1e-10:
            raise ParameterOutOfRange("overlap matrix is not doubly stochastic")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    def gap_spectrum(self) -> np.ndarray:
        """Eigenvalues of I - M^T M, ascending."""
        return hermitian_eig(np.eye(self.d) - self.m.T @ self.m).eigenvalues

    @property
    def ergodic(self) -> bool:
        return spectral_gap_projection(self) > 1e-10


def overlap_matrix(eigenbasis, measurement_basis) -> OverlapMatrix:
    l = check_basis(eigenbasis)
    phi = check_basis(measurement_basis, l.shape[0])
    return OverlapMatrix(l.shape[0], np.abs(dagger(phi) @ l) ** 2)


def spectral_gap_projection(overlap: OverlapMatrix) -> float:
    """Second smallest eigenvalue of I - M^T M, clamped to [0, 1]."""
    ev = overlap.gap_spectrum()
    return float(min(max(ev[1], 0.0), 1.0))


def superoperator_matrix(channel: KrausChannel) -> np.ndarray:
    """Real matrix T_ab = Tr(G_a E(G_b)) in the orthonormal Gell-Mann basis."""
    g = gell_mann_basis(channel.dim)
    images = np.stack([channel.apply_matrix(gb) for gb in g])
    t = np.einsum("aij,bji->ab", g, images)
    return np.real(t)


class GapReport(NamedTuple):
    gap: float
    ergodic: bool
    spectrum: np.ndarray


def superoperator_gap_report(channel: KrausChannel) -> GapReport:
    """Gap of T^dag T for a unital channel: 1 minus the largest eigenvalue
    strictly below 1; zero (non-ergodic) if eigenvalue 1 is degenerate."""
    u = is_unital(channel, tol=1e-8)
    if not u.unital:
        raise NotUnital(f"channel is not unital (residual {u.residual:.3e})")
    t = superoperator_matrix(channel)
    ev = hermitian_eig(t.T @ t).eigenvalues
    below = ev[ev < 1 - 1e-8]
    n_fixed = len(ev) - len(below)
    if n_fixed > 1:
        return GapReport(0.0, False, ev)
    top = below[-1] if len(below) else 0.0
    return GapReport(float(min(max(1.0 - top, 0.0), 1.0)), True, ev)


def superoperator_spectral_gap(channel: KrausChannel) -> float:
    return superoperator_gap_report(channel).gap


class EntropyProductionReport(NamedTuple):
    lhs: float  # S(E(rho)) - S(rho), nats
    rhs: float  # gamma/2 * ||rho - I/d||_F^2

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    def holds(self, tol: float = 1e-10) -> bool:
        return self.slack >= -tol


def entropy_production_check(channel: KrausChannel, rho, gamma: float) -> EntropyProductionReport:
    u = is_unital(channel, tol=1e-8)
    if not u.unital:
        raise NotUnital(f"channel is not unital (residual {u.residual:.3e})")
    rho = as_state(rho)
    out = apply(channel, rho)
    lhs = von_neumann_entropy(out) - von_neumann_entropy(rho)
    rhs = 0.5 * gamma * frobenius_norm(rho.matrix - np.eye(rho.dim) / rho.dim) ** 2
    return EntropyProductionReport(lhs, rhs)


class PinskerReport(NamedTuple):
    relative_entropy: float
    trace_term: float      # (Tr|rho - sigma|)^2 / 2
    frobenius_term: float  # ||rho - sigma||_F^2 / 2

    @property
    def slacks(self) -> tuple[float, float]:
        return (self.relative_entropy - self.trace_term, self.trace_term - self.frobenius_term)

    def holds(self, tol: float = 1e-10) -> bool:
        return min(self.slacks) >= -tol


def pinsker_check(rho, sigma) -> PinskerReport:
    """S(rho||sigma) >= (Tr|rho-sigma|)^2/2 >= ||rho-sigma||_F^2/2, natural log."""
    rho, sigma = as_state(rho), as_state(sigma)
    s = relative_entropy(rho, sigma)
    diff = rho.matrix - sigma.matrix
    return PinskerReport(s, 0.5 * schatten_norm(diff, 1) ** 2, 0.5 * frobenius_norm(diff) ** 2)


# -- random channels ---------------------------------------------------------

def _haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_channel(d: int, kraus_count: int, seed) -> KrausChannel:
    """Channel from a Haar-random isometry C^d -> C^(d k), cut into k blocks."""
    if kraus_count < 1:
        raise ParameterOutOfRange("kraus_count must be >= 1")
    rng = as_generator(seed, "channels")
    v = _haar_unitary(rng, d * kraus_count)[:, :d]
    return KrausChannel([v[i * d:(i + 1) * d, :] for i in range(kraus_count)])


def random_unital_channel(d: int, unitary_count: int, seed) -> KrausChannel:
    """Random convex mixture of Haar unitaries, Kraus sqrt(p_mu) U_mu."""
    if unitary_count < 1:
        raise ParameterOutOfRange("unitary_count must be >= 1")
    rng = as_generator(seed, "channels")
    p = rng.dirichlet(np.ones(unitary_count))
    return KrausChannel([math.sqrt(pm) * _haar_unitary(rng, d) for pm in p])

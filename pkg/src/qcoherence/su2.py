"""SU(2) group elements, Haar sampling, exact tensor quadrature and group
integration over SU(2), SU(2)^(x)N and collective R^(x)N.

Elements are parametrized by rotation angle omega in [0, 2pi] about the axis
(sin t cos p, sin t sin p, cos t), t in [0, pi], p in [-pi, pi]. The
normalized Haar measure in these coordinates is
sin^2(omega/2) sin(t) / (4 pi^2) domega dt dp.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Union

import numpy as np

from .errors import AngleOutOfRange, DimensionMismatch, GridTooLarge, IndexOutOfRange
from .linalg import PAULIS, dagger
from .rng import stream

TWO_PI = 2.0 * math.pi
MAX_QUADRATURE_EVALUATIONS = 10 ** 8


@dataclass(frozen=True)
class SU2Element:
    omega: float
    theta: float
    phi: float

    def __post_init__(self):
        eps = 1e-12
        if not -eps <= self.omega <= TWO_PI + eps:
            raise AngleOutOfRange(f"omega={self.omega} outside [0, 2pi]")
        if not -eps <= self.theta <= math.pi + eps:
            raise AngleOutOfRange(f"theta={self.theta} outside [0, pi]")
        if not -math.pi - eps <= self.phi <= math.pi + eps:
            raise AngleOutOfRange(f"phi={self.phi} outside [-pi, pi]")

    def matrix(self) -> np.ndarray:
        return su2_matrix(self)


def su2_matrices(omega, theta, phi) -> np.ndarray:
    """Vectorized R(omega, theta, phi) = exp(-i omega/2 n.sigma); shape (..., 2, 2)."""
    omega, theta, phi = np.broadcast_arrays(
        np.asarray(omega, float), np.asarray(theta, float), np.asarray(phi, float)
    )
    c, s = np.cos(omega / 2), np.sin(omega / 2)
    ct, st = np.cos(theta), np.sin(theta)
    out = np.empty(omega.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c - 1j * s * ct
    out[..., 0, 1] = -1j * np.exp(-1j * phi) * s * st
    out[..., 1, 0] = -1j * np.exp(1j * phi) * s * st
    out[..., 1, 1] = c + 1j * s * ct
    return out


def su2_matrix(g: SU2Element) -> np.ndarray:
    return su2_matrices(g.omega, g.theta, g.phi)


def _exp_pauli(angle: float, k: int) -> np.ndarray:
    """exp(-i angle/2 sigma_k)."""
    return math.cos(angle / 2) * PAULIS[0] - 1j * math.sin(angle / 2) * PAULIS[k]


def su2_euler_product(g: SU2Element) -> np.ndarray:
    """The same element as the five-factor product
    e^{-i p s3/2} e^{-i t s2/2} e^{-i w s3/2} e^{i t s2/2} e^{i p s3/2}."""
    return (
        _exp_pauli(g.phi, 3) @ _exp_pauli(g.theta, 2) @ _exp_pauli(g.omega, 3)
        @ _exp_pauli(-g.theta, 2) @ _exp_pauli(-g.phi, 3)
    )


# -- Haar sampling ------------------------------------------------------------

def omega_cdf(omega):
    """CDF of the rotation angle, (omega - sin omega) / (2 pi)."""
    omega = np.asarray(omega, float)
    return (omega - np.sin(omega)) / TWO_PI


def invert_omega_cdf(u, tol: float = 1e-12, max_iter: int = 200) -> np.ndarray:
    """Solve (w - sin w)/(2 pi) = u by safeguarded Newton.

    Newton starts at 2 pi u; any step leaving the current bracket, or taken
    where the density sin^2(w/2)/pi is tiny, is replaced by bisection.
    """
    u = np.asarray(u, float)
    lo = np.zeros_like(u)
    hi = np.full_like(u, TWO_PI)
    w = TWO_PI * u
    for _ in range(max_iter):
        f = omega_cdf(w) - u
        done = np.abs(f) < tol
        if np.all(done):
            break
        hi = np.where(f > 0, w, hi)
        lo = np.where(f < 0, w, lo)
        dens = (1.0 - np.cos(w)) / TWO_PI
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = w - f / dens
        ok = (dens > 1e-14) & (newton > lo) & (newton < hi)
        step = np.where(ok, newton, 0.5 * (lo + hi))
        w = np.where(done, w, step)
    return w


class HaarAngles(NamedTuple):
    omega: np.ndarray
    theta: np.ndarray
    phi: np.ndarray


def haar_angles(rng: np.random.Generator, size) -> HaarAngles:
    u = rng.random(tuple(np.atleast_1d(size)) + (3,))
    phi = -math.pi + TWO_PI * u[..., 0]
    theta = np.arccos(np.clip(1.0 - 2.0 * u[..., 1], -1.0, 1.0))
    omega = invert_omega_cdf(u[..., 2])
    return HaarAngles(omega, theta, phi)


def haar_sample(rng: np.random.Generator) -> SU2Element:
    a = haar_angles(rng, 1)
    return SU2Element(float(a.omega[0]), float(a.theta[0]), float(a.phi[0]))


# -- group specification and integration methods -----------------------------

@dataclass(frozen=True)
class GroupSpec:
    """Which group acts on N qubits: ``single`` (one qubit, SU(2)),
    ``independent`` (R_1 x ... x R_N) or ``collective`` (R x ... x R)."""

    kind: str
    n: int = 1

    def __post_init__(self):
        if self.kind not in ("single", "independent", "collective"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.n < 1 or (self.kind == "single" and self.n != 1):
            raise ValueError(f"invalid qubit count {self.n} for {self.kind}")

    @classmethod
    def single(cls) -> "GroupSpec":
        return cls("single", 1)

    @classmethod
    def independent(cls, n: int) -> "GroupSpec":
        return cls("independent", n)

    @classmethod
    def collective(cls, n: int) -> "GroupSpec":
        return cls("collective", n)

    @property
    def dim(self) -> int:
        return 2 ** self.n

    @property
    def n_factors(self) -> int:
        """Number of independent SU(2) elements per group element."""
        return self.n if self.kind == "independent" else 1

    def unitaries(self, factors: np.ndarray) -> np.ndarray:
        """Representation matrices for factor stacks of shape (batch, k, 2, 2)."""
        if self.kind == "independent":
            mats = [factors[:, j] for j in range(self.n)]
        else:
            mats = [factors[:, 0]] * self.n
        out = mats[0]
        for m in mats[1:]:
            b, p, q = out.shape[0], out.shape[1], m.shape[1]
            out = np.einsum("bij,bkl->bikjl", out, m).reshape(b, p * q, p * q)
        return out


@dataclass(frozen=True)
class MonteCarlo:
    samples: int = 200_000
    seed: int = 0
    chunk: int = 4096

    def __post_init__(self):
        if self.samples < 1 or self.chunk < 1:
            raise ValueError("samples and chunk must be >= 1")


@dataclass(frozen=True)
class Quadrature:
    n_omega: int = 16
    n_theta: int = 16
    n_phi: int = 16

    def __post_init__(self):
        if min(self.n_omega, self.n_theta, self.n_phi) < 1:
            raise ValueError("node counts must be >= 1")

    @property
    def size(self) -> int:
        return self.n_omega * self.n_theta * self.n_phi


IntegrationMethod = Union[MonteCarlo, Quadrature]


class IntegralEstimate(NamedTuple):
    value: np.ndarray | float
    stderr: np.ndarray | float
    evaluations: int


def quadrature_nodes(q: Quadrature) -> tuple[HaarAngles, np.ndarray]:
    """Tensor grid for the normalized Haar measure.

    Uniform midpoint nodes in phi and omega (exact for trigonometric
    polynomials of degree below the node count), with the sin^2(omega/2)
    density folded into the omega weights, and Gauss-Legendre in cos(theta).
    """
    w_nodes = TWO_PI * (np.arange(q.n_omega) + 0.5) / q.n_omega
    w_weights = (1.0 - np.cos(w_nodes)) / q.n_omega
    w_weights /= w_weights.sum()
    p_nodes = -math.pi + TWO_PI * (np.arange(q.n_phi) + 0.5) / q.n_phi
    p_weights = np.full(q.n_phi, 1.0 / q.n_phi)
    x, xw = np.polynomial.legendre.leggauss(q.n_theta)
    t_nodes = np.arccos(x)
    t_weights = xw / 2.0
    W, T, P = np.meshgrid(w_nodes, t_nodes, p_nodes, indexing="ij")
    weights = np.einsum("i,j,k->ijk", w_weights, t_weights, p_weights)
    return HaarAngles(W.ravel(), T.ravel(), P.ravel()), weights.ravel()


class _Accumulator:
    """Chunk-wise mean and variance (Chan et al. pairwise update)."""

    def __init__(self):
        self.n = 0
        self.mean = None
        self.m2 = None

    def add(self, x: np.ndarray):
        nb = x.shape[0]
        mb = x.mean(axis=0)
        m2b = np.sum(np.abs(x - mb) ** 2, axis=0)
        if self.mean is None:
            self.n, self.mean, self.m2 = nb, mb, m2b
            return
        n = self.n + nb
        delta = mb - self.mean
        self.mean = self.mean + delta * (nb / n)
        self.m2 = self.m2 + m2b + np.abs(delta) ** 2 * (self.n * nb / n)
        self.n = n

    def stderr(self):
        if self.n < 2:
            return np.zeros_like(np.real(self.mean))
        return np.sqrt(self.m2 / (self.n - 1) / self.n)


Integrand = Callable[[np.ndarray], np.ndarray]


def integrate(f: Integrand, spec: GroupSpec, method: IntegrationMethod) -> IntegralEstimate:
    """Haar average of ``f`` over the group described by ``spec``.

    ``f`` receives SU(2) factor stacks of shape (batch, k, 2, 2), with
    k = ``spec.n_factors``, and returns an array with leading dimension
    ``batch`` (scalar or tensor valued). Use ``spec.unitaries`` to obtain
    the representation matrices on the 2^N-dimensional space.
    """
    k = spec.n_factors
    if isinstance(method, Quadrature):
        total = method.size ** k
        if total > MAX_QUADRATURE_EVALUATIONS:
            raise GridTooLarge(
                f"tensor quadrature needs {total:.3g} evaluations (> {MAX_QUADRATURE_EVALUATIONS:.0e}); use Monte Carlo"
            )
        angles, weights = quadrature_nodes(method)
        mats = su2_matrices(*angles)
        g = method.size
        chunk = max(1, min(total, 1 << 14))
        acc = None
        for start in range(0, total, chunk):
            flat = np.arange(start, min(start + chunk, total))
            idx = np.stack(np.unravel_index(flat, (g,) * k), axis=1)
            factors = mats[idx]
            w = np.prod(weights[idx], axis=1)
            vals = np.asarray(f(factors))
            part = np.tensordot(w, vals, axes=(0, 0))
            acc = part if acc is None else acc + part
        zero = np.zeros_like(np.real(acc)) if isinstance(acc, np.ndarray) else 0.0
        return IntegralEstimate(acc, zero, total)
    if isinstance(method, MonteCarlo):
        acc = _Accumulator()
        remaining = method.samples
        chunk_index = 0
        while remaining > 0:
            m = min(method.chunk, remaining)
            rng = stream(method.seed, "group", chunk_index)
            a = haar_angles(rng, (m, k))
            factors = su2_matrices(*a)
            acc.add(np.asarray(f(factors)))
            remaining -= m
            chunk_index += 1
        return IntegralEstimate(acc.mean, acc.stderr(), method.samples)
    raise TypeError(f"unknown integration method {method!r}")


# -- Pauli transfer elements and their Haar integrals -------------------------

_TRACE_WITH_PAULI = np.transpose(PAULIS, (0, 2, 1)).reshape(4, 4).T.copy()


def transfer_matrix(r: np.ndarray) -> np.ndarray:
    """P[x, y] = Tr(sigma_x R sigma_y R^dag) for R of shape (..., 2, 2)."""
    r = np.asarray(r)
    lead = r.shape[:-2]
    r = r.reshape(-1, 1, 2, 2)
    conj = r @ PAULIS @ dagger(r)  # (b, y, 2, 2)
    # Tr(sigma_x A) = sum_ij sigma_x[j, i] A[i, j]
    p = conj.reshape(-1, 4, 4) @ _TRACE_WITH_PAULI  # (b, y, x)
    return np.real(np.swapaxes(p, -1, -2)).reshape(lead + (4, 4))


def _check_indices(*xs):
    for x in xs:
        if not isinstance(x, (int, np.integer)) or not 0 <= x <= 3:
            raise IndexOutOfRange(f"Pauli index must be 0..3, got {x!r}")


def single_integral(x: int, y: int) -> float:
    """Haar average of P[x, y]: 2 if x = y = 0, else 0."""
    _check_indices(x, y)
    return 2.0 if x == 0 and y == 0 else 0.0


def pair_integral(x1: int, y1: int, x2: int, y2: int) -> float:
    """Haar average of P[x1,y1] P[x2,y2]."""
    _check_indices(x1, y1, x2, y2)
    if x1 == x2 == y1 == y2 == 0:
        return 4.0
    if 0 in (x1, y1, x2, y2):
        return 0.0
    if x1 == x2 and y1 == y2:
        return 4.0 / 3.0
    return 0.0


def levi_civita(i: int, j: int, k: int) -> int:
    if 0 in (i, j, k) or len({i, j, k}) < 3:
        return 0
    perm = (i - 1, j - 1, k - 1)
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


def triple_integral(x1: int, y1: int, x2: int, y2: int, x3: int, y3: int) -> float:
    """Haar average of P[x1,y1] P[x2,y2] P[x3,y3] over one SU(2) element."""
    _check_indices(x1, y1, x2, y2, x3, y3)
    xs, ys = (x1, x2, x3), (y1, y2, y3)
    total = 0.0
    # one qubit carries the identity on both sides, the other two match
    for zero, (a, b) in ((0, (1, 2)), (1, (0, 2)), (2, (0, 1))):
        if (xs[zero] == 0 and ys[zero] == 0 and xs[a] != 0 and xs[a] == xs[b]
                and ys[a] != 0 and ys[a] == ys[b]):
            total += 8.0 / 3.0
    if xs == (0, 0, 0) and ys == (0, 0, 0):
        total += 8.0
    total += 4.0 / 3.0 * levi_civita(*xs) * levi_civita(*ys)
    return total


def transfer_moment_table(order: int, method: IntegrationMethod) -> IntegralEstimate:
    """Numerical Haar averages of products of ``order`` transfer elements of
    a single SU(2) element, as an array of shape (4, 4) * order indexed
    (x1, y1, x2, y2, ...)."""
    letters = "abcdefghij"

    def f(factors):
        p = transfer_matrix(factors[:, 0])
        ops = [p] * order
        subs = ",".join("z" + letters[2 * i] + letters[2 * i + 1] for i in range(order))
        out = np.einsum(subs + "->z" + letters[: 2 * order], *ops)
        return out.reshape(out.shape[0], -1)

    est = integrate(f, GroupSpec.single(), method)
    shape = (4,) * (2 * order)
    return IntegralEstimate(
        np.reshape(est.value, shape), np.reshape(est.stderr, shape), est.evaluations
    )


def check_dim(spec: GroupSpec, d: int):
    if spec.dim != d:
        raise DimensionMismatch(f"group acts on dimension {spec.dim}, state has {d}")


def conjugate_batch(u: np.ndarray, m: np.ndarray) -> np.ndarray:
    return u @ m @ dagger(u)

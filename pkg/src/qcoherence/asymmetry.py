"""Frobenius-norm asymmetry of states under SU(2), SU(2)^(x)N and collective
rotations, twirling, and the closed forms these reduce to."""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch
from .linalg import dagger
from .states import DensityMatrix, as_state, bloch_vector, correlation_tensor, purity, von_neumann_entropy, _n_qubits
from .su2 import (
    GroupSpec,
    IntegrationMethod,
    MonteCarlo,
    Quadrature,
    SU2Element,
    check_dim,
    integrate,
    quadrature_nodes,
    su2_matrices,
)


class AsymmetryEstimate(NamedTuple):
    asymmetry: float
    symmetry: float
    stderr: float  # Monte Carlo standard error of ``asymmetry``; 0 for quadrature


def _commutator_integrand(rho: np.ndarray, spec: GroupSpec):
    norm = 4.0 * float(np.sum(np.abs(rho) ** 2))

    def f(factors):
        u = spec.unitaries(factors)
        ur = u @ rho
        ru = rho @ u
        comm = np.sum(np.abs(ur - ru) ** 2, axis=(1, 2)) / norm
        anti = np.sum(np.abs(ur + ru) ** 2, axis=(1, 2)) / norm
        return np.stack([comm, anti], axis=1)

    return f


def single_qubit_twirl_map(method: Quadrature) -> np.ndarray:
    """Superoperator (acting on row-major vec) of rho -> avg R rho R^dag."""
    angles, weights = quadrature_nodes(method)
    r = su2_matrices(*angles)
    # vec(R X R^dag) = (R (x) conj(R)) vec(X) for row-major vec
    sup = np.einsum("n,nij,nkl->ikjl", weights, r, r.conj()).reshape(4, 4)
    return sup


def _apply_per_qubit(sup: np.ndarray, m: np.ndarray, n: int) -> np.ndarray:
    """Apply the same single-qubit superoperator to every qubit of ``m``."""
    t = m.reshape((2,) * (2 * n))
    s = sup.reshape(2, 2, 2, 2)  # (out_row, out_col, in_row, in_col)
    for q in range(n):
        t = np.tensordot(s, t, axes=([2, 3], [q, n + q]))
        # new axes 0,1 are this qubit's row/col; move them back into place
        t = np.moveaxis(t, [0, 1], [q, n + q])
    return t.reshape(2 ** n, 2 ** n)


def _factorized_overlap(rho: np.ndarray, n: int, method: Quadrature) -> float:
    """Integral of Tr(rho U rho U^dag) over SU(2)^(x)n, one factor at a time."""
    twirled = _apply_per_qubit(single_qubit_twirl_map(method), rho, n)
    return float(np.real(np.trace(rho @ twirled)))


def asymmetry_estimate(rho, spec: GroupSpec, method: IntegrationMethod) -> AsymmetryEstimate:
    """A(G, rho) = avg ||[U, rho]||_F^2 / (4 ||rho||_F^2) and the matching
    symmetry S(G, rho) from the anticommutator, integrated in the same pass.

    For independent products under quadrature the integral is evaluated
    factor by factor, which keeps it exact for any N.
    """
    rho = as_state(rho)
    check_dim(spec, rho.dim)
    m = rho.matrix
    if spec.kind == "independent" and spec.n > 1 and isinstance(method, Quadrature):
        p = purity(rho)
        overlap = _factorized_overlap(m, spec.n, method)
        a = 0.5 - overlap / (2.0 * p)
        s = 0.5 + overlap / (2.0 * p)
        return AsymmetryEstimate(a, s, 0.0)
    est = integrate(_commutator_integrand(m, spec), spec, method)
    value = np.asarray(est.value)
    err = np.asarray(est.stderr)
    return AsymmetryEstimate(float(value[0]), float(value[1]), float(err[0]))


def asymmetry(rho, spec: GroupSpec, method: IntegrationMethod) -> float:
    return asymmetry_estimate(rho, spec, method).asymmetry


def symmetry(rho, spec: GroupSpec, method: IntegrationMethod) -> float:
    return asymmetry_estimate(rho, spec, method).symmetry


def asymmetry_analytic_qubit(rho) -> float:
    """1/2 - 1/(2(1 + |s|^2)) for a single qubit under SU(2)."""
    s = bloch_vector(rho).norm
    return 0.5 - 0.5 / (1.0 + s * s)


def f_functional(rho, g: SU2Element) -> float:
    """Closed form of Tr[rho R rho R^dag] in terms of the Bloch vector's
    length and direction (theta0, phi0) and the group angles."""
    sv = bloch_vector(rho)
    s2 = sv.norm ** 2
    x, y, z = sv.s
    theta0 = math.atan2(math.hypot(x, y), z) if s2 > 0 else 0.0
    phi0 = math.atan2(y, x) if s2 > 0 else 0.0
    w, t, p = g.omega, g.theta, g.phi
    half = math.sin(w / 2) ** 2
    polar = math.cos(2 * theta0) + math.cos(2 * t) + 3 * math.cos(2 * t) * math.cos(2 * theta0)
    azim = (math.cos(2 * (p - phi0)) * math.sin(t) ** 2 * math.sin(theta0) ** 2
            + math.cos(p - phi0) * math.sin(2 * t) * math.sin(2 * theta0))
    return (8 + 3 * s2 + s2 * (5 * math.cos(w) + 2 * half * polar) + 8 * s2 * half * azim) / 16


def asymmetry_independent_closed(rho) -> float:
    """1/2 - 1/(2^(N+1) Tr rho^2) under independent SU(2) on each of N qubits."""
    rho = as_state(rho)
    n = _n_qubits(rho.dim)
    return 0.5 - 1.0 / (2 ** (n + 1) * purity(rho))


def asymmetry_collective_2q_closed(rho) -> float:
    """1/2 - (1 + (T11 + T22 + T33)^2 / 3) / (8 Tr rho^2) under R (x) R."""
    rho = as_state(rho)
    if rho.dim != 4:
        raise DimensionMismatch(f"two-qubit closed form needs d=4, got d={rho.dim}")
    trace_t = float(np.sum(correlation_tensor(rho).diagonal()))
    return 0.5 - (1.0 + trace_t ** 2 / 3.0) / (8.0 * purity(rho))


def twirl(rho, spec: GroupSpec, method: IntegrationMethod) -> DensityMatrix:
    """Group average of U rho U^dag."""
    rho = as_state(rho)
    check_dim(spec, rho.dim)
    m = rho.matrix
    if spec.kind == "independent" and isinstance(method, Quadrature):
        out = _apply_per_qubit(single_qubit_twirl_map(method), m, spec.n)
    else:
        def f(factors):
            u = spec.unitaries(factors)
            return u @ m @ dagger(u)
        out = np.asarray(integrate(f, spec, method).value)
    out = 0.5 * (out + dagger(out))
    return DensityMatrix(out / np.trace(out).real)


def entropic_asymmetry(rho, spec: GroupSpec, method: IntegrationMethod) -> float:
    """S(twirl(rho)) - S(rho), natural log."""
    rho = as_state(rho)
    return von_neumann_entropy(twirl(rho, spec, method)) - von_neumann_entropy(rho)


def closed_form(rho, spec: GroupSpec) -> float | None:
    """Analytic asymmetry where one is known, otherwise None."""
    rho = as_state(rho)
    check_dim(spec, rho.dim)
    if spec.kind == "single" or (spec.kind == "collective" and spec.n == 1):
        return asymmetry_analytic_qubit(rho)
    if spec.kind == "independent":
        return asymmetry_independent_closed(rho)
    if spec.kind == "collective" and spec.n == 2:
        return asymmetry_collective_2q_closed(rho)
    return None

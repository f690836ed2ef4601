"""Tabulate closed forms next to their numerical counterparts for external plotting."""
from __future__ import annotations

import csv
import io

import numpy as np

from . import asymmetry as asym
from .channels import amplitude_damping, cohering_power, cohering_power_commutator
from .states import DensityMatrix, from_bloch, purity
from .su2 import GroupSpec, IntegrationMethod, Quadrature

KINDS = ("asymmetry-vs-s", "asymmetry-vs-purity-N", "cohering-vs-gamma")


def grid(start: float, stop: float, steps: int) -> np.ndarray:
    """``steps`` evenly spaced points from start to stop inclusive."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if steps == 1:
        return np.array([float(start)])
    return np.linspace(start, stop, steps)


def _asymmetry_vs_s(points, method):
    spec = GroupSpec.single()
    rows = []
    for s in points:
        rho = from_bloch([0.0, 0.0, s])
        rows.append([s, purity(rho), asym.asymmetry_analytic_qubit(rho), asym.asymmetry(rho, spec, method)])
    return ["s", "purity", "analytic", "numerical"], rows


def _asymmetry_vs_purity(points, method, n_qubits):
    spec = GroupSpec.independent(n_qubits)
    dim = 2 ** n_qubits
    ket = np.zeros((dim, dim))
    ket[0, 0] = 1.0
    rows = []
    for p in points:
        rho = DensityMatrix(p * ket + (1 - p) * np.eye(dim) / dim)
        rows.append([p, purity(rho), asym.asymmetry_independent_closed(rho), asym.asymmetry(rho, spec, method)])
    return ["p", "purity", "analytic", "numerical"], rows


def _cohering_vs_gamma(points):
    rows = []
    for g in points:
        e = amplitude_damping(g)
        rows.append([g, cohering_power(e), cohering_power_commutator(e)])
    return ["gamma", "cohering_power", "commutator_form"], rows


def sweep(kind: str, points, method: IntegrationMethod | None = None, n_qubits: int = 2):
    """Return (header, rows) for one of ``KINDS``."""
    points = [float(x) for x in points]
    method = method or Quadrature()
    if kind == "asymmetry-vs-s":
        if any(not 0 <= s <= 1 for s in points):
            raise ValueError("Bloch lengths must lie in [0, 1]")
        return _asymmetry_vs_s(points, method)
    if kind == "asymmetry-vs-purity-N":
        if any(not 0 <= p <= 1 for p in points):
            raise ValueError("mixing weights must lie in [0, 1]")
        if n_qubits < 1:
            raise ValueError("need at least one qubit")
        return _asymmetry_vs_purity(points, method, n_qubits)
    if kind == "cohering-vs-gamma":
        if any(not 0 <= g <= 1 for g in points):
            raise ValueError("damping parameters must lie in [0, 1]")
        return _cohering_vs_gamma(points)
    raise ValueError(f"unknown sweep {kind!r}; choose from {', '.join(KINDS)}")


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format(float(x), ".17g") for x in row])
    return buf.getvalue()

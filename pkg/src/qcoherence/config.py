"""Numerical tolerances shared by every validation in the package.

All checks read the active record at call time, so a suite can tighten or
loosen everything at once with :func:`override_tolerances`.
"""
from __future__ import annotations

import contextlib
import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-10        # max |A - A^dag| entry
    trace: float = 1e-10            # |Tr rho - 1|
    psd: float = 1e-10              # min eigenvalue >= -psd
    trace_preserving: float = 1e-10  # ||sum K^dag K - I||_F
    unital: float = 1e-10           # ||E(I/d) - I/d||_F
    orthonormal: float = 1e-10      # ||B^dag B - I||_F for supplied bases
    bloch: float = 1e-10            # |s| <= 1 + bloch
    entropy_cutoff: float = 1e-14   # eigenvalues below count as zero in S(rho)
    support_cutoff: float = 1e-12   # sigma eigenvalue below counts as outside support
    support_weight: float = 1e-10   # rho weight needed to trigger the +inf case
    eig_residual: float = 1e-10


_active = Tolerances()


def get_tolerances() -> Tolerances:
    return _active


def set_tolerances(**changes) -> Tolerances:
    global _active
    _active = dataclasses.replace(_active, **changes)
    return _active


@contextlib.contextmanager
def override_tolerances(**changes):
    global _active
    saved = _active
    _active = dataclasses.replace(_active, **changes)
    try:
        yield _active
    finally:
        _active = saved

"""Property suites run by ``qcoherence verify``.

Each property draws its random instances from the stream
``(seed, "verify/<suite>/<property>", case)``, so a failing case can be
replayed from the seed and case index printed in the report, and the whole
report is a pure function of (suite, seed, cases, tol).
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import asymmetry as asym
from . import channels as ch
from . import measures as cm
from .linalg import (
    INF,
    anticommutator,
    commutator,
    dagger,
    entrywise_lp_norm,
    frobenius_norm,
    hermitian_eig,
    schatten_norm,
)
from .rng import stream
from .states import (
    DensityMatrix,
    bloch_vector,
    correlation_tensor,
    maximally_mixed,
    pure_state,
    purity,
    random_density,
    random_pure,
    random_unitary,
    von_neumann_entropy,
)
from .su2 import (
    GroupSpec,
    MonteCarlo,
    Quadrature,
    SU2Element,
    haar_angles,
    haar_sample,
    integrate,
    pair_integral,
    single_integral,
    su2_euler_product,
    su2_matrices,
    su2_matrix,
    transfer_matrix,
    transfer_moment_table,
    triple_integral,
)


@dataclass
class PropertyResult:
    suite: str
    name: str
    tol: float
    cases: int = 0
    max_error: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.cases > 0


@dataclass
class Context:
    seed: int = 0
    tol: float = 1e-10
    cases: int | None = None

    def count(self, default: int) -> int:
        return default if self.cases is None else max(1, self.cases)


class _Check:
    def __init__(self, ctx: Context, suite: str, name: str, tol: float):
        self.ctx = ctx
        self.key = f"verify/{suite}/{name}"
        self.result = PropertyResult(suite, name, tol)

    def rng(self, case: int) -> np.random.Generator:
        return stream(self.ctx.seed, self.key, case)

    def record(self, case: int, error: float):
        r = self.result
        r.cases += 1
        error = float(error)
        if math.isnan(error) or error > r.tol:
            r.failures.append(case)
            error = math.inf if math.isnan(error) else error
        r.max_error = max(r.max_error, error)


SUITES: dict[str, Callable[[Context], list[PropertyResult]]] = {}


def suite(name: str):
    def wrap(fn):
        SUITES[name] = fn
        return fn
    return wrap


def _ginibre(rng, d):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def _hermitian(rng, d):
    g = _ginibre(rng, d)
    return (g + dagger(g)) / 2


def _rand_state(rng, d, full_rank=False) -> DensityMatrix:
    rank = d if full_rank else int(rng.integers(1, d + 1))
    return random_density(d, rank, rng)


# -- norms ---------------------------------------------------------------------

@suite("norms")
def _norms(ctx: Context) -> list[PropertyResult]:
    out = []
    n = ctx.count(100)
    pairs = [(1, 2), (1, 3), (2, 4), (1, INF), (2, INF), (3, INF)]

    c = _Check(ctx, "norms", "holder_chain", ctx.tol)
    case = 0
    for d in (2, 3, 4, 6):
        for _ in range(n):
            a = _ginibre(c.rng(case), d)
            err = 0.0
            for p, q in pairs:
                np_, nq = schatten_norm(a, p), schatten_norm(a, q)
                expo = 1 / p - (0 if q == INF else 1 / q)
                err = max(err, np_ - d ** expo * nq, nq - np_)
            c.record(case, max(err, 0.0))
            case += 1
    out.append(c.result)

    c = _Check(ctx, "norms", "schatten_unitary_invariance", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        d = int(rng.integers(2, 7))
        a = _ginibre(rng, d)
        u, v = random_unitary(d, rng), random_unitary(d, rng)
        c.record(i, max(abs(schatten_norm(u @ a @ v, p) - schatten_norm(a, p)) for p in (1, 2, 3, INF)))
    out.append(c.result)

    c = _Check(ctx, "norms", "eig_reconstruction", ctx.tol)
    case = 0
    for d in range(2, 17):
        for _ in range(max(1, n // 10)):
            h = _hermitian(c.rng(case), d)
            w, v = hermitian_eig(h)
            scale = max(1.0, frobenius_norm(h))
            err = max(
                frobenius_norm(h @ v - v * w) / scale,
                frobenius_norm(dagger(v) @ v - np.eye(d)),
                float(np.max(np.diff(w), initial=0.0) < 0),
            )
            c.record(case, err)
            case += 1
    out.append(c.result)

    c = _Check(ctx, "norms", "entrywise_l2_is_frobenius", 1e-12)
    for i in range(n):
        rng = c.rng(i)
        a = _ginibre(rng, int(rng.integers(2, 7)))
        scale = max(1.0, frobenius_norm(a))
        c.record(i, abs(entrywise_lp_norm(a, 2) - schatten_norm(a, 2)) / scale)
    out.append(c.result)

    c = _Check(ctx, "norms", "commutator_anticommutator_identity", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        d = int(rng.integers(2, 7))
        u, h = random_unitary(d, rng), _hermitian(rng, d)
        lhs = frobenius_norm(commutator(u, h)) ** 2 + frobenius_norm(anticommutator(u, h)) ** 2
        rhs = 4 * frobenius_norm(h) ** 2
        c.record(i, abs(lhs - rhs) / max(1.0, rhs))
    out.append(c.result)
    return out


# -- coherence measures --------------------------------------------------------

@suite("coherence")
def _coherence(ctx: Context) -> list[PropertyResult]:
    out = []
    n = ctx.count(100)

    c = _Check(ctx, "coherence", "qubit_C_equals_bloch_length", 1e-12)
    for i in range(n):
        rho = _rand_state(c.rng(i), 2)
        c.record(i, abs(cm.coherence_frobenius(rho) - bloch_vector(rho).norm))
    out.append(c.result)

    c = _Check(ctx, "coherence", "eigenvalue_form_matches", ctx.tol)
    case = 0
    for d in range(2, 9):
        for _ in range(max(1, n // 2)):
            rho = _rand_state(c.rng(case), d)
            c.record(case, abs(cm.coherence_eigform(rho) - cm.coherence_frobenius(rho)))
            case += 1
    out.append(c.result)

    c = _Check(ctx, "coherence", "polarization_degrees", 1e-12)
    for i in range(n):
        rng = c.rng(i)
        d = 2 + i % 2
        rho = _rand_state(rng, d)
        phi = rho.matrix * float(rng.uniform(0.1, 10.0))
        p = cm.degree_polarization_2d(phi) if d == 2 else cm.degree_polarization_3d(phi)
        c.record(i, abs(p - cm.coherence_frobenius(rho)))
    out.append(c.result)

    c = _Check(ctx, "coherence", "unitary_invariance", ctx.tol)
    case = 0
    for d in (2, 3, 4):
        for _ in range(n):
            rng = c.rng(case)
            rho, u = _rand_state(rng, d), random_unitary(d, rng)
            rot = DensityMatrix(u @ rho.matrix @ dagger(u))
            c.record(case, abs(cm.coherence_frobenius(rot) - cm.coherence_frobenius(rho)))
            case += 1
    out.append(c.result)

    c = _Check(ctx, "coherence", "range_and_pure_states", 1e-8)
    for i in range(n):
        rng = c.rng(i)
        d = int(rng.integers(2, 7))
        rho = _rand_state(rng, d)
        val = cm.coherence_frobenius(rho)
        err = max(0.0, -val, val - 1)
        # C = 1 exactly when the state is pure
        err = max(err, abs((1 - val) - 0) if abs(purity(rho) - 1) < 1e-8 else 0.0)
        psi = random_pure(d, rng)
        err = max(err, abs(cm.coherence_frobenius(psi) - 1))
        c.record(i, err)
    out.append(c.result)

    c = _Check(ctx, "coherence", "l1_bound", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        d = int(rng.integers(2, 6))
        rho, basis = _rand_state(rng, d), random_unitary(d, rng)
        val = cm.c_l1(rho, basis)
        err = max(val - math.sqrt(d * (d - 1)) * cm.coherence_frobenius(rho), val - (d - 1), 0.0)
        c.record(i, err)
    out.append(c.result)

    c = _Check(ctx, "coherence", "trace_norm_chain", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        d = int(rng.integers(2, 6))
        rho = _rand_state(rng, d)
        chain = cm.trace_bound_chain(rho)
        dev = rho.matrix - np.eye(d) / d
        err = max(chain.trace_distance - chain.frobenius_bound,
                  chain.trace_distance - math.sqrt(d) * frobenius_norm(dev), 0.0)
        if chain.c_tr is not None:
            err = max(err, chain.c_tr - chain.trace_distance, chain.c_tr - chain.maximum)
        c.record(i, err)
    out.append(c.result)

    c = _Check(ctx, "coherence", "maximally_coherent_maxima", ctx.tol)
    for i, d in enumerate((2, 3, 4)):
        mc = cm.maximally_coherent_state(d)
        target = 2 * (1 - 1 / d)
        # dual witness W = 2|psi><psi| - I certifies min over diagonal delta
        # of ||rho - delta||_1 >= 2 - 2 max_i |psi_i|^2 = 2(1 - 1/d)
        lower = 2 - 2 * max(np.abs(np.diag(mc.matrix)))
        err = max(abs(cm.c_l1(mc) - (d - 1)), abs(cm.trace_distance_to_mixed(mc) - target), abs(lower - target))
        if d == 2:
            err = max(err, abs(cm.c_trace_qubit(mc) - target))
        c.record(i, err)
    out.append(c.result)

    c = _Check(ctx, "coherence", "mco_independence", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        d = 2 + i % 2
        rho = _rand_state(rng, d)
        v = random_unitary(d, rng)
        rotated = cm.MubSet(d, tuple(v @ b for b in cm.mub_set(d).bases))
        target = cm.bz_information(rho)
        c.record(i, max(abs(cm.bz_information_mco(rho, cm.mub_set(d)) - target),
                        abs(cm.bz_information_mco(rho, rotated) - target)))
    out.append(c.result)

    c = _Check(ctx, "coherence", "d2_divergence_identity", ctx.tol)
    case = 0
    for d in (2, 3, 4):
        for _ in range(n):
            rho = _rand_state(c.rng(case), d)
            d2 = cm.alpha_divergence(rho, maximally_mixed(d), 2.0)
            c.record(case, abs(d2 - (d - 1) * cm.coherence_frobenius(rho) ** 2))
            case += 1
    out.append(c.result)

    c = _Check(ctx, "coherence", "information_bound", ctx.tol)
    for i in range(ctx.count(200)):
        rng = c.rng(i)
        rho = _rand_state(rng, int(rng.integers(2, 5)))
        c.record(i, max(-cm.check_info_bound(rho).slack, 0.0))
    out.append(c.result)

    c = _Check(ctx, "coherence", "basis_dependence_witness", 0.0)
    rho = DensityMatrix(np.diag([0.8, 0.2]))
    h = ch.hadamard_basis(2)
    rot = DensityMatrix(h @ rho.matrix @ dagger(h))
    changed = abs(cm.c_l1(rot) - cm.c_l1(rho)) > 0.1
    kept = abs(cm.coherence_frobenius(rot) - cm.coherence_frobenius(rho)) < 1e-12
    c.record(0, 0.0 if changed and kept else 1.0)
    out.append(c.result)
    return out


# -- channels -----------------------------------------------------------------

def werner_holevo(d: int = 3) -> ch.KrausChannel:
    """(Tr(rho) I - rho^T)/(d-1): unital but not a mixture of unitaries for d=3."""
    ops = []
    for i in range(d):
        for j in range(i + 1, d):
            k = np.zeros((d, d))
            k[i, j], k[j, i] = 1, -1
            ops.append(k / math.sqrt(d - 1))
    return ch.KrausChannel(ops)


def _mixed_kraus(channel: ch.KrausChannel, rng) -> ch.KrausChannel:
    """Same channel, Kraus operators mixed by a random isometry."""
    k = len(channel.kraus)
    extra = int(rng.integers(0, 3))
    w = random_unitary(k + extra, rng)[:, :k]
    return ch.KrausChannel(np.einsum("ij,jab->iab", w, channel.kraus))


@suite("channels")
def _channels(ctx: Context) -> list[PropertyResult]:
    out = []
    n = ctx.count(200)

    def rand_channel(rng):
        d = int(rng.integers(2, 5))
        return ch.random_channel(d, int(rng.integers(1, 5)), rng)

    c = _Check(ctx, "channels", "cohering_power_forms_agree", ctx.tol)
    for i in range(n):
        e = rand_channel(c.rng(i))
        c.record(i, abs(ch.cohering_power(e) - ch.cohering_power_commutator(e)))
    out.append(c.result)

    c = _Check(ctx, "channels", "cohering_power_normalized", ctx.tol)
    for i in range(n):
        e = rand_channel(c.rng(i))
        cp = ch.cohering_power(e)
        pur = purity(ch.apply(e, maximally_mixed(e.dim)))
        err = max(cp - 1, 0.0)
        if abs(pur - 1) < 1e-8:
            err = max(err, abs(cp - 1))
        if abs(cp - 1) < 1e-10:
            err = max(err, abs(pur - 1) * 1e-2)  # scaled: tolerance is 1e-8 on purity
        c.record(i, err)
    for j, d in enumerate((2, 3, 4)):
        c.record(n + j, abs(ch.cohering_power(ch.amplitude_damping(1.0, d)) - 1))
    out.append(c.result)

    c = _Check(ctx, "channels", "kraus_representation_invariance", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        e = rand_channel(rng)
        f = _mixed_kraus(e, rng)
        c.record(i, max(abs(ch.cohering_power(e) - ch.cohering_power(f)),
                        abs(ch.cohering_power_commutator(e) - ch.cohering_power_commutator(f))))
    out.append(c.result)

    c = _Check(ctx, "channels", "nonunital_iff_positive_cohering_power", 0.0)
    for i in range(n):
        rng = c.rng(i)
        e = rand_channel(rng) if i % 2 else ch.random_unital_channel(int(rng.integers(2, 5)), int(rng.integers(1, 4)), rng)
        unital = ch.is_unital(e).unital
        cp = ch.cohering_power(e)
        pur = purity(ch.apply(e, maximally_mixed(e.dim)))
        consistent = (not unital) == (cp > 1e-10) and (unital or pur > 1 / e.dim)
        c.record(i, 0.0 if consistent else 1.0)
    out.append(c.result)

    c = _Check(ctx, "channels", "amplitude_damping_cohering_power", 1e-12)
    for i, g in enumerate(np.linspace(0, 1, 11)):
        c.record(i, abs(ch.cohering_power(ch.amplitude_damping(float(g))) - g))
    out.append(c.result)

    c = _Check(ctx, "channels", "unital_zoo_zero_cohering_power", ctx.tol)
    zoo = [ch.depolarizing(0.3), ch.depolarizing(0.7, 3), ch.phase_damping(0.4), ch.phase_damping(0.9, 4),
           ch.projective_measurement(ch.hadamard_basis(3)), werner_holevo(3)]
    for i, e in enumerate(zoo):
        c.record(i, max(ch.cohering_power(e), 0.0 if ch.is_unital(e).unital else 1.0))
    out.append(c.result)

    c = _Check(ctx, "channels", "pinsker_chain", ctx.tol)
    case = 0
    for d in (2, 3, 4):
        for _ in range(n):
            rng = c.rng(case)
            rep = ch.pinsker_check(_rand_state(rng, d, True), _rand_state(rng, d, True))
            c.record(case, max(-min(rep.slacks), 0.0))
            case += 1
    out.append(c.result)
    return out


# -- Theorem suites -------------------------------------------------------------

@suite("theorem1")
def _theorem1(ctx: Context) -> list[PropertyResult]:
    out = []
    n = ctx.count(200)

    c = _Check(ctx, "theorem1", "measurement_channel_entropy_production", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        d = 2 + i % 2
        rho = _rand_state(rng, d, full_rank=bool(i % 3))
        phi = random_unitary(d, rng)
        gamma = ch.spectral_gap_projection(ch.overlap_matrix(rho.eig.eigenvectors, phi))
        rep = ch.entropy_production_check(ch.projective_measurement(phi), rho, gamma)
        c.record(i, max(-rep.slack, 0.0))
    out.append(c.result)

    c = _Check(ctx, "theorem1", "boundary_gaps", 1e-12)
    for i, d in enumerate((2, 3, 4)):
        eig = random_unitary(d, c.rng(i))
        same = ch.spectral_gap_projection(ch.overlap_matrix(eig, eig))
        mub = ch.spectral_gap_projection(ch.overlap_matrix(eig, eig @ ch.hadamard_basis(d)))
        c.record(i, max(abs(same), abs(mub - 1)))
    out.append(c.result)

    c = _Check(ctx, "theorem1", "worked_example", 1e-6)
    rep = ch.entropy_production_check(ch.projective_measurement(ch.hadamard_basis(2)), DensityMatrix(np.diag([0.9, 0.1])), 1.0)
    c.record(0, max(abs(rep.lhs - 0.368064), abs(rep.rhs - 0.16), abs(rep.slack - 0.208064)))
    out.append(c.result)

    c = _Check(ctx, "theorem1", "superoperator_gap_entropy_production", ctx.tol)
    for i in range(max(1, n // 2)):
        rng = c.rng(i)
        d = 2 + i % 2
        e = ch.random_unital_channel(d, int(rng.integers(2, 5)), rng)
        gamma = ch.superoperator_spectral_gap(e)
        rep = ch.entropy_production_check(e, _rand_state(rng, d), gamma)
        c.record(i, max(-rep.slack, 0.0))
    out.append(c.result)
    return out


@suite("theorem2")
def _theorem2(ctx: Context) -> list[PropertyResult]:
    c = _Check(ctx, "theorem2", "unital_monotonicity", ctx.tol)
    for i in range(ctx.count(500)):
        rng = c.rng(i)
        d = (2, 3, 4)[i % 3]
        if d == 3 and i % 4 == 0:
            u = random_unitary(3, rng)
            e = ch.KrausChannel([u @ k for k in werner_holevo(3).kraus])
        else:
            e = ch.random_unital_channel(d, int(rng.integers(1, 5)), rng)
        rho = _rand_state(rng, d)
        c.record(i, max(cm.coherence_frobenius(ch.apply(e, rho)) - cm.coherence_frobenius(rho), 0.0))
    return [c.result]


# -- asymmetry --------------------------------------------------------------------

def singlet() -> DensityMatrix:
    return pure_state(np.array([0, 1, -1, 0]) / math.sqrt(2))


def _mc_error(est, truth, stderr) -> float:
    """Normalized MC deviation: <= 1 means within 5 standard errors and the
    standard error itself below 2e-3."""
    dev = abs(est - truth) / (5 * stderr + 1e-12)
    return max(dev, stderr / 2e-3)


@suite("asymmetry")
def _asymmetry(ctx: Context) -> list[PropertyResult]:
    out = []
    n = ctx.count(20)
    quad = Quadrature()

    c = _Check(ctx, "asymmetry", "qubit_closed_vs_quadrature", ctx.tol)
    for i in range(n):
        rho = _rand_state(c.rng(i), 2)
        c.record(i, abs(asym.asymmetry(rho, GroupSpec.single(), quad) - asym.asymmetry_analytic_qubit(rho)))
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "independent_closed_vs_quadrature", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        nq = 2 + i % 3
        rho = _rand_state(rng, 2 ** nq)
        spec = GroupSpec.independent(nq)
        c.record(i, abs(asym.asymmetry(rho, spec, quad) - asym.asymmetry_independent_closed(rho)))
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "collective_closed_vs_quadrature", ctx.tol)
    states = [singlet(), pure_state([1, 0, 0, 0])]
    for i in range(n):
        rho = states[i] if i < len(states) else _rand_state(c.rng(i), 4)
        spec = GroupSpec.collective(2)
        c.record(i, abs(asym.asymmetry(rho, spec, quad) - asym.asymmetry_collective_2q_closed(rho)))
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "closed_forms_vs_monte_carlo", 1.0)
    cases = [(GroupSpec.single(), 2), (GroupSpec.independent(2), 4), (GroupSpec.independent(3), 8),
             (GroupSpec.collective(2), 4)]
    for i in range(max(4, n // 5)):
        rng = c.rng(i)
        spec, d = cases[i % len(cases)]
        rho = _rand_state(rng, d)
        est = asym.asymmetry_estimate(rho, spec, MonteCarlo(200_000, seed=int(rng.integers(2 ** 31))))
        c.record(i, _mc_error(est.asymmetry, asym.closed_form(rho, spec), est.stderr))
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "asymmetry_plus_symmetry_is_one", ctx.tol)
    specs = [(GroupSpec.single(), 2), (GroupSpec.collective(2), 4), (GroupSpec.independent(2), 4),
             (GroupSpec.collective(3), 8)]
    for i in range(n):
        rng = c.rng(i)
        spec, d = specs[i % len(specs)]
        rho = _rand_state(rng, d)
        method = quad if i % 2 == 0 else MonteCarlo(2000, seed=i)
        est = asym.asymmetry_estimate(rho, spec, method)
        c.record(i, abs(est.asymmetry + est.symmetry - 1))
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "range_and_mixed_state_zero", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        spec, d = specs[i % len(specs)]
        a = asym.asymmetry(_rand_state(rng, d), spec, quad)
        zero = asym.asymmetry(maximally_mixed(d), spec, quad)
        c.record(i, max(-a, a - 1, abs(zero), 0.0))
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "basis_independence", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        spec, d = [(GroupSpec.single(), 2), (GroupSpec.independent(2), 4)][i % 2]
        rho, u = _rand_state(rng, d), random_unitary(d, rng)
        rot = DensityMatrix(u @ rho.matrix @ dagger(u))
        c.record(i, abs(asym.asymmetry(rot, spec, quad) - asym.asymmetry(rho, spec, quad)))
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "collective_trace_invariance", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        rho = _rand_state(rng, 4)
        r = su2_matrix(haar_sample(rng))
        u = np.kron(r, r)
        rot = DensityMatrix(u @ rho.matrix @ dagger(u))
        tr0 = np.sum(correlation_tensor(rho).diagonal())
        tr1 = np.sum(correlation_tensor(rot).diagonal())
        c.record(i, max(abs(tr0 - tr1), abs(asym.asymmetry_collective_2q_closed(rot) - asym.asymmetry_collective_2q_closed(rho))))
    # a local rotation on one qubit does change it
    ket00 = pure_state([1, 0, 0, 0])
    h = np.kron(ch.hadamard_basis(2), np.eye(2))
    local = DensityMatrix(h @ ket00.matrix @ dagger(h))
    moved = abs(asym.asymmetry_collective_2q_closed(local) - asym.asymmetry_collective_2q_closed(ket00)) > 1e-3
    c.record(n, 0.0 if moved else 1.0)
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "twirl_idempotent_and_invariant", ctx.tol)
    for i in range(n):
        rng = c.rng(i)
        spec, d = specs[i % len(specs)]
        rho = _rand_state(rng, d)
        once = asym.twirl(rho, spec, quad)
        twice = asym.twirl(once, spec, quad)
        a = haar_angles(rng, (1, spec.n_factors))
        u = spec.unitaries(su2_matrices(*a))[0]
        fixed = frobenius_norm(u @ once.matrix @ dagger(u) - once.matrix)
        c.record(i, max(frobenius_norm(twice.matrix - once.matrix), fixed))
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "entropic_asymmetry_examples", 1e-10)
    c.record(0, abs(asym.entropic_asymmetry(pure_state([1, 0]), GroupSpec.single(), quad) - math.log(2)))
    c.record(1, abs(asym.entropic_asymmetry(singlet(), GroupSpec.collective(2), quad)))
    c.record(2, abs(asym.entropic_asymmetry(maximally_mixed(4), GroupSpec.independent(2), quad)))
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "f_functional_matches_trace", 1e-12)
    for i in range(ctx.count(100)):
        rng = c.rng(i)
        rho, g = _rand_state(rng, 2), haar_sample(rng)
        r = su2_matrix(g)
        direct = float(np.real(np.trace(rho.matrix @ r @ rho.matrix @ dagger(r))))
        c.record(i, abs(asym.f_functional(rho, g) - direct))
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "euler_decomposition_identity", 1e-12)
    for i in range(ctx.count(100)):
        g = haar_sample(c.rng(i))
        r = su2_matrix(g)
        c.record(i, max(float(np.max(np.abs(r - su2_euler_product(g)))),
                        frobenius_norm(dagger(r) @ r - np.eye(2)), abs(np.linalg.det(r) - 1)))
    out.append(c.result)

    c = _Check(ctx, "asymmetry", "haar_angle_moments", 1.0)
    a = haar_angles(c.rng(0), 1_000_000)
    c.record(0, abs(np.mean(np.cos(a.omega)) + 0.5) / 0.005)
    c.record(1, abs(np.mean(np.cos(a.theta))) / 0.005)
    out.append(c.result)
    return out


# -- integral tables ---------------------------------------------------------------

@suite("integr-tables")
def _tables(ctx: Context) -> list[PropertyResult]:
    out = []
    quad = Quadrature()
    tables = {1: single_integral, 2: pair_integral, 3: triple_integral}
    for order, fn in tables.items():
        c = _Check(ctx, "integr-tables", f"order{order}_vs_quadrature", 1e-12)
        numeric = transfer_moment_table(order, quad).value
        for i, idx in enumerate(itertools.product(range(4), repeat=2 * order)):
            c.record(i, abs(numeric[idx] - fn(*idx)))
        out.append(c.result)

    c = _Check(ctx, "integr-tables", "p33_closed_form", 1e-12)
    for i in range(ctx.count(100)):
        g = haar_sample(c.rng(i))
        p = transfer_matrix(su2_matrix(g))[3, 3]
        c.record(i, abs(p - (2 * math.cos(g.theta) ** 2 + 2 * math.sin(g.theta) ** 2 * math.cos(g.omega))))
    out.append(c.result)

    c = _Check(ctx, "integr-tables", "triple_vs_monte_carlo", 1.0)
    picks = [(0, 0, 0, 0, 0, 0), (0, 0, 1, 2, 1, 2), (1, 1, 2, 2, 3, 3), (1, 2, 2, 3, 3, 1),
             (3, 3, 3, 3, 3, 3), (2, 1, 0, 0, 2, 1), (1, 0, 1, 0, 0, 0)]

    def f(factors):
        p = transfer_matrix(factors[:, 0])
        return np.stack([p[:, a, b] * p[:, x, y] * p[:, u, v] for a, b, x, y, u, v in picks], axis=1)

    est = integrate(f, GroupSpec.single(), MonteCarlo(1_000_000, seed=ctx.seed))
    for i, idx in enumerate(picks):
        dev = abs(est.value[i] - triple_integral(*idx)) / (5 * est.stderr[i] + 1e-12)
        c.record(i, dev)
    out.append(c.result)
    return out


ORDER = ["norms", "coherence", "channels", "theorem1", "theorem2", "asymmetry", "integr-tables"]


def run(names, seed: int = 0, tol: float = 1e-10, cases: int | None = None) -> list[PropertyResult]:
    if isinstance(names, str):
        names = ORDER if names == "all" else [names]
    ctx = Context(seed=seed, tol=tol, cases=cases)
    results = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(ORDER)} or all")
        results.extend(SUITES[name](ctx))
    return results


def format_text(results: list[PropertyResult], seed: int) -> str:
    lines = [f"{'suite':<14} {'property':<42} {'cases':>6} {'max_error':>10} {'tol':>8}  status"]
    for r in results:
        status = "PASS" if r.passed else f"FAIL (seed={seed} cases={r.failures[:5]})"
        lines.append(f"{r.suite:<14} {r.name:<42} {r.cases:>6} {r.max_error:>10.3e} {r.tol:>8.1e}  {status}")
    ok = sum(r.passed for r in results)
    lines.append(f"summary: {ok}/{len(results)} properties passed (seed={seed})")
    return "\n".join(lines) + "\n"


def format_json(results: list[PropertyResult], seed: int) -> str:
    doc = {
        "seed": seed,
        "passed": all(r.passed for r in results),
        "properties": [dict(asdict(r), passed=r.passed) for r in results],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"

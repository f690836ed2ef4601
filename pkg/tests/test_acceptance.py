"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (visible under ``pytest -v`` and when
the file is run directly) and then asserts.
"""
import contextlib
import io
import itertools
import math
import time

import numpy as np
import pytest

from qcoherence import asymmetry as asym
from qcoherence import channels as ch
from qcoherence import measures as cm
from qcoherence.cli import main
from qcoherence.linalg import frobenius_norm
from qcoherence.rng import stream
from qcoherence.states import (
    DensityMatrix,
    bloch_vector,
    maximally_mixed,
    pure_state,
    random_density,
    random_unitary,
)
from qcoherence.su2 import (
    GroupSpec,
    MonteCarlo,
    Quadrature,
    haar_sample,
    pair_integral,
    single_integral,
    su2_euler_product,
    su2_matrix,
    transfer_moment_table,
    triple_integral,
)

QUAD = Quadrature()
SEED = 2024


class Criterion:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.failed = []
        self.checks = 0
        self.start = time.perf_counter()

    def check(self, label, ok, detail=""):
        self.checks += 1
        if not ok:
            self.failed.append(f"{label} {detail}".strip())

    def finish(self, budget=None):
        elapsed = time.perf_counter() - self.start
        if budget is not None:
            self.check("time budget", elapsed < budget, f"{elapsed:.1f}s >= {budget}s")
        status = "PASS" if not self.failed else "FAIL"
        line = f"[{status}] criterion {self.number}: {self.title} ({self.checks} checks, {elapsed:.1f}s)"
        if self.failed:
            line += " -- " + "; ".join(self.failed[:5])
        return line


@pytest.fixture
def report(capsys):
    lines = []
    yield lines
    with capsys.disabled():
        for line in lines:
            print("\n" + line, end="")


def rand_state(key, i, d, full_rank=False):
    rng = stream(SEED, key, i)
    rank = d if full_rank else int(rng.integers(1, d + 1))
    return random_density(d, rank, rng)


def within_mc(est, truth):
    return abs(est.asymmetry - truth) < 5 * est.stderr + 1e-12


def test_criterion_1_closed_form_exactness(report):
    c = Criterion(1, "closed-form exactness")
    t = time.perf_counter()
    worst = max(abs(cm.coherence_frobenius(rho) - bloch_vector(rho).norm)
                for rho in (rand_state("c1-bloch", i, 2) for i in range(100)))
    c.check("C = |s|", worst < 1e-12, f"max err {worst:.2e}")
    c.check("C = |s| time", time.perf_counter() - t < 1)

    t = time.perf_counter()
    worst = 0.0
    for i in range(100):
        d = 2 + i % 2
        rho = rand_state("c1-pol", i, d)
        phi = rho.matrix * (0.5 + i)
        p = cm.degree_polarization_2d(phi) if d == 2 else cm.degree_polarization_3d(phi)
        worst = max(worst, abs(p - cm.coherence_frobenius(rho)))
    c.check("P2/P3", worst < 1e-12, f"max err {worst:.2e}")
    c.check("P2/P3 time", time.perf_counter() - t < 1)

    t = time.perf_counter()
    worst = 0.0
    for d in (2, 3, 4):
        for i in range(100):
            rho = rand_state(f"c1-d2-{d}", i, d)
            d2 = cm.alpha_divergence(rho, maximally_mixed(d), 2.0)
            worst = max(worst, abs(d2 - (d - 1) * cm.coherence_frobenius(rho) ** 2))
    c.check("D2 identity", worst < 1e-10, f"max err {worst:.2e}")
    c.check("D2 time", time.perf_counter() - t < 1)

    t = time.perf_counter()
    worst = max(abs(ch.cohering_power(ch.amplitude_damping(g)) - g) for g in np.round(np.linspace(0, 1, 11), 12))
    c.check("cohering power = gamma", worst < 1e-12, f"max err {worst:.2e}")
    c.check("cohering power time", time.perf_counter() - t < 1)

    report.append(c.finish())
    assert not c.failed, c.failed


def test_criterion_2_integral_tables(report):
    c = Criterion(2, "integral-table reproduction by 16^3 quadrature")
    for order, fn in ((1, single_integral), (2, pair_integral), (3, triple_integral)):
        table = transfer_moment_table(order, QUAD).value
        worst = max(abs(table[idx] - fn(*idx)) for idx in itertools.product(range(4), repeat=2 * order))
        c.check(f"order {order}", worst < 1e-10, f"max err {worst:.2e}")
    pair_values = {round(pair_integral(*idx), 12) for idx in itertools.product(range(4), repeat=4)}
    c.check("pair values in {4, 4/3, 0}", pair_values <= {4.0, round(4 / 3, 12), 0.0}, str(pair_values))
    report.append(c.finish(budget=10))
    assert not c.failed, c.failed


def test_criterion_3_asymmetry_closed_forms_vs_numerics(report):
    c = Criterion(3, "asymmetry closed forms vs quadrature and Monte Carlo")
    single = GroupSpec.single()
    worst_q, worst_se = 0.0, 0.0
    for i in range(20):
        rho = rand_state("c3-qubit", i, 2)
        truth = asym.asymmetry_analytic_qubit(rho)
        worst_q = max(worst_q, abs(asym.asymmetry(rho, single, QUAD) - truth))
        est = asym.asymmetry_estimate(rho, single, MonteCarlo(200_000, seed=1000 + i))
        worst_se = max(worst_se, est.stderr)
        c.check(f"qubit {i} MC", within_mc(est, truth), f"|{est.asymmetry:.6f}-{truth:.6f}| vs 5*{est.stderr:.1e}")
    c.check("qubit quadrature", worst_q < 1e-10, f"max err {worst_q:.2e}")
    c.check("qubit stderr < 2e-3", worst_se < 2e-3, f"{worst_se:.2e}")

    for n in (2, 3):
        spec = GroupSpec.independent(n)
        for i in range(10):
            rho = rand_state(f"c3-indep-{n}", i, 2 ** n)
            est = asym.asymmetry_estimate(rho, spec, MonteCarlo(200_000, seed=2000 + 10 * n + i))
            truth = asym.asymmetry_independent_closed(rho)
            c.check(f"independent N={n} #{i}", within_mc(est, truth) and est.stderr < 2e-3,
                    f"|{est.asymmetry:.6f}-{truth:.6f}| vs 5*{est.stderr:.1e}")

    spec = GroupSpec.collective(2)
    named = [("singlet", pure_state(np.array([0, 1, -1, 0]) / math.sqrt(2)), 0.0),
             ("|00>", pure_state([1, 0, 0, 0]), 1 / 3)]
    named += [(f"random #{i}", rand_state("c3-coll", i, 4), None) for i in range(10)]
    for k, (label, rho, expected) in enumerate(named):
        truth = asym.asymmetry_collective_2q_closed(rho)
        if expected is not None:
            c.check(f"collective {label} closed form", abs(truth - expected) < 1e-12, f"{truth}")
        est = asym.asymmetry_estimate(rho, spec, MonteCarlo(200_000, seed=3000 + k))
        c.check(f"collective {label} MC", within_mc(est, truth) and est.stderr < 2e-3,
                f"|{est.asymmetry:.6f}-{truth:.6f}| vs 5*{est.stderr:.1e}")
    report.append(c.finish(budget=60))
    assert not c.failed, c.failed


def test_criterion_4_theorem_suites(report):
    c = Criterion(4, "theorem property suites")
    fails = 0
    for i in range(500):
        rng = stream(SEED, "c4-thm2", i)
        d = (2, 3, 4)[i % 3]
        e = ch.random_unital_channel(d, int(rng.integers(1, 5)), rng)
        rho = random_density(d, int(rng.integers(1, d + 1)), rng)
        fails += cm.coherence_frobenius(ch.apply(e, rho)) > cm.coherence_frobenius(rho) + 1e-10
    c.check("Theorem 2 monotonicity", fails == 0, f"{fails} failures")

    worst = math.inf
    for i in range(200):
        rng = stream(SEED, "c4-thm1", i)
        d = 2 + i % 2
        rho = random_density(d, d, rng)
        phi = random_unitary(d, rng)
        gamma = ch.spectral_gap_projection(ch.overlap_matrix(rho.eig.eigenvectors, phi))
        worst = min(worst, ch.entropy_production_check(ch.projective_measurement(phi), rho, gamma).slack)
    c.check("Theorem 1 slack", worst >= -1e-10, f"min slack {worst:.2e}")
    for d in (2, 3):
        eig = random_unitary(d, stream(SEED, "c4-boundary", d))
        same = ch.spectral_gap_projection(ch.overlap_matrix(eig, eig))
        mub = ch.spectral_gap_projection(ch.overlap_matrix(eig, eig @ ch.hadamard_basis(d)))
        c.check(f"gamma=0 same basis d={d}", abs(same) < 1e-12, f"{same:.2e}")
        c.check(f"gamma=1 MUB d={d}", abs(mub - 1) < 1e-12, f"{mub:.2e}")

    worst_p, worst_i = math.inf, math.inf
    for i in range(200):
        d = (2, 3, 4)[i % 3]
        rep = ch.pinsker_check(rand_state("c4-pinsker-a", i, d, True), rand_state("c4-pinsker-b", i, d, True))
        worst_p = min(worst_p, *rep.slacks)
        worst_i = min(worst_i, cm.check_info_bound(rand_state("c4-info", i, d)).slack)
    c.check("Pinsker chain", worst_p >= -1e-10, f"min slack {worst_p:.2e}")
    c.check("information bound", worst_i >= -1e-10, f"min slack {worst_i:.2e}")

    for i in range(200):
        d = (2, 3, 4)[i % 3]
        rho = rand_state("c4-chain", i, d)
        chain = cm.trace_bound_chain(rho)
        ok = cm.c_l1(rho) <= math.sqrt(d * (d - 1)) * cm.coherence_frobenius(rho) + 1e-10
        ok &= chain.trace_distance <= chain.frobenius_bound + 1e-10
        if chain.c_tr is not None:
            ok &= chain.c_tr <= chain.trace_distance + 1e-10
        if not ok:
            c.check(f"bound chain #{i}", False)
    c.check("bound chain", True)
    for d in (2, 3, 4):
        mc = cm.maximally_coherent_state(d)
        target = 2 * (1 - 1 / d)
        # upper bound: delta = I/d; lower bound from the witness 2|psi><psi| - I,
        # valid for every incoherent delta
        upper = cm.trace_distance_to_mixed(mc)
        lower = 2 - 2 * float(np.max(np.diag(mc.matrix).real))
        c.check(f"C_l1 max d={d}", abs(cm.c_l1(mc) - (d - 1)) < 1e-10)
        c.check(f"C_tr max d={d}", abs(upper - target) < 1e-10 and abs(lower - target) < 1e-10,
                f"[{lower}, {upper}] vs {target}")
    report.append(c.finish(budget=120))
    assert not c.failed, c.failed


def test_criterion_5_structural_invariants(report):
    c = Criterion(5, "structural invariants")
    worst = 0.0
    for i in range(50):
        d = (2, 3, 4)[i % 3]
        rng = stream(SEED, "c5-unitary", i)
        rho, u = random_density(d, 2, rng), random_unitary(d, rng)
        rot = DensityMatrix(u @ rho.matrix @ u.conj().T)
        worst = max(worst, abs(cm.coherence_frobenius(rot) - cm.coherence_frobenius(rho)))
    c.check("C unitary invariance", worst < 1e-10, f"{worst:.2e}")

    worst = 0.0
    for i in range(20):
        spec, d = [(GroupSpec.single(), 2), (GroupSpec.independent(2), 4)][i % 2]
        rng = stream(SEED, "c5-asym", i)
        rho, u = random_density(d, 2, rng), random_unitary(d, rng)
        rot = DensityMatrix(u @ rho.matrix @ u.conj().T)
        worst = max(worst, abs(asym.asymmetry(rot, spec, QUAD) - asym.asymmetry(rho, spec, QUAD)))
    c.check("asymmetry unitary invariance", worst < 1e-10, f"{worst:.2e}")

    worst_as, worst_tw = 0.0, 0.0
    specs = [(GroupSpec.single(), 2), (GroupSpec.independent(2), 4), (GroupSpec.collective(2), 4),
             (GroupSpec.collective(3), 8)]
    for i in range(20):
        spec, d = specs[i % len(specs)]
        rho = rand_state("c5-as", i, d)
        est = asym.asymmetry_estimate(rho, spec, QUAD)
        mc = asym.asymmetry_estimate(rho, spec, MonteCarlo(5000, seed=i))
        worst_as = max(worst_as, abs(est.asymmetry + est.symmetry - 1), abs(mc.asymmetry + mc.symmetry - 1))
        once = asym.twirl(rho, spec, QUAD)
        worst_tw = max(worst_tw, frobenius_norm(asym.twirl(once, spec, QUAD).matrix - once.matrix))
    c.check("A + S = 1", worst_as < 1e-10, f"{worst_as:.2e}")
    c.check("twirl idempotence", worst_tw < 1e-10, f"{worst_tw:.2e}")

    worst = 0.0
    for i in range(100):
        d = 2 + i % 2
        rng = stream(SEED, "c5-mco", i)
        rho = random_density(d, d, rng)
        v = random_unitary(d, rng)
        rotated = cm.MubSet(d, tuple(v @ b for b in cm.mub_set(d).bases))
        for mubs in (cm.mub_set(d), rotated):
            worst = max(worst, abs(cm.bz_information_mco(rho, mubs) - cm.bz_information(rho)))
    c.check("MCO independence", worst < 1e-10, f"{worst:.2e}")

    worst = 0.0
    for i in range(100):
        g = haar_sample(stream(SEED, "c5-euler", i))
        worst = max(worst, float(np.max(np.abs(su2_matrix(g) - su2_euler_product(g)))))
    c.check("Euler decomposition", worst < 1e-12, f"{worst:.2e}")
    report.append(c.finish(budget=30))
    assert not c.failed, c.failed


def _verify_all_output():
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["verify", "all", "--seed", "42"])
    return code, buf.getvalue().encode()


def test_criterion_6_determinism(report):
    c = Criterion(6, "verify all --seed 42 twice is byte-identical")
    code1, out1 = _verify_all_output()
    code2, out2 = _verify_all_output()
    c.check("byte-identical", out1 == out2)
    c.check("suites pass", code1 == 0 and code2 == 0, f"exit codes {code1}, {code2}")
    report.append(c.finish())
    assert not c.failed, c.failed


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))

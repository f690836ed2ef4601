"""Command-line front end.

Exit codes: 0 ok, 1 property failure, 2 parse/validation error,
3 measure or group not applicable to the input, 4 failed precondition
(e.g. a non-unital channel where a unital one is required).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import asymmetry as asym
from . import channels as ch
from . import io as qio
from . import measures as cm
from . import sweep as sw
from . import verify as vf
from .config import override_tolerances
from .errors import NotPowerOfTwo, NotUnital, QCoherenceError
from .states import maximally_mixed, purity
from .su2 import GroupSpec, MonteCarlo, Quadrature

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_INAPPLICABLE, EXIT_PRECONDITION = 0, 1, 2, 3, 4

GLOBAL_DEFAULTS = {"json": False, "seed": 0, "tol": 1e-10}

MEASURES = ("frobenius", "bz", "l1", "trace", "relent", "p2", "p3")


class Inapplicable(Exception):
    pass


class UsageError(Exception):
    pass


SCIENTIFIC = ("unital_residual", "stderr", "difference")


def fmt(x, key: str = "") -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.3e}" if key in SCIENTIFIC else f"{x:.12f}"
    return str(x)


def emit(args, doc: dict, order=None):
    if args.json:
        print(json.dumps(doc, indent=1, sort_keys=True))
        return
    for key in order or doc:
        if key in doc:
            print(f"{key}: {fmt(doc[key], key)}")


# -- coherence ------------------------------------------------------------------

def _measure(name: str, rho, basis):
    d = rho.dim
    if name == "frobenius":
        return cm.coherence_frobenius(rho)
    if name == "bz":
        return cm.bz_information(rho)
    if name == "l1":
        return cm.c_l1(rho, basis)
    if name == "trace":
        if d != 2:
            raise Inapplicable(f"trace-norm coherence is only available for d=2 (got d={d})")
        return cm.c_trace_qubit(rho)
    if name == "relent":
        if d != 2:
            raise Inapplicable(f"relative-entropy coherence is only available for d=2 (got d={d})")
        return cm.c_relent_qubit(rho)
    if name == "p2":
        if d != 2:
            raise Inapplicable(f"P2 needs a 2x2 coherence matrix (got d={d})")
        return cm.degree_polarization_2d(rho.matrix)
    if name == "p3":
        if d != 3:
            raise Inapplicable(f"P3 needs a 3x3 coherence matrix (got d={d})")
        return cm.degree_polarization_3d(rho.matrix)
    raise UsageError(f"unknown measure {name!r}")


def cmd_coherence(args) -> int:
    rho = qio.load_state(args.state)
    basis = qio.load_basis(args.basis) if args.basis else None
    doc = {"dim": rho.dim}
    if args.all:
        for name in MEASURES:
            try:
                doc[name] = _measure(name, rho, basis)
            except Inapplicable:
                pass
        d = rho.dim
        c = doc["frobenius"]
        if d in (2, 3):
            doc["bz_mco"] = cm.bz_information_mco(rho, cm.mub_set(d))
        chain = cm.trace_bound_chain(rho)
        info = cm.check_info_bound(rho)
        doc.update({
            "l1_bound": math.sqrt(d * (d - 1)) * c,
            "trace_distance": chain.trace_distance,
            "trace_bound": chain.frobenius_bound,
            "trace_maximum": chain.maximum,
            "d2_divergence": cm.alpha_divergence(rho, maximally_mixed(d), 2.0),
            "info_bound_lhs": info.lhs,
            "info_bound_rhs": info.rhs,
            "info_bound_slack": info.slack,
        })
    else:
        for name in args.measure or ["frobenius"]:
            doc[name] = _measure(name, rho, basis)
    emit(args, doc)
    return EXIT_OK


# -- channel ----------------------------------------------------------------------

def cmd_channel(args) -> int:
    e = qio.load_channel(args.channel)
    wanted = args.cohering_power or args.unital or args.spectral_gap or args.entropy_production or args.apply
    doc = {"dim": e.dim, "kraus_count": len(e)}
    if args.cohering_power or not wanted:
        doc["cohering_power"] = ch.cohering_power(e)
        doc["cohering_power_commutator"] = ch.cohering_power_commutator(e)
    if args.unital or not wanted:
        rep = ch.is_unital(e)
        doc["unital"] = rep.unital
        doc["unital_residual"] = rep.residual
    if args.spectral_gap:
        rep = ch.superoperator_gap_report(e)
        doc["spectral_gap"] = rep.gap
        doc["ergodic"] = rep.ergodic
    if args.entropy_production:
        rho = qio.load_state(args.entropy_production)
        if rho.dim != e.dim:
            raise Inapplicable(f"state has d={rho.dim}, channel has d={e.dim}")
        gamma, source = _entropy_gap(e, rho, args.gap_source)
        rep = ch.entropy_production_check(e, rho, gamma)
        doc.update({"gamma": gamma, "gap_source": source, "lhs": rep.lhs, "rhs": rep.rhs,
                    "slack": rep.slack, "holds": rep.holds(args.tol)})
    if args.apply:
        rho = qio.load_state(args.apply)
        if rho.dim != e.dim:
            raise Inapplicable(f"state has d={rho.dim}, channel has d={e.dim}")
        out = ch.apply(e, rho)
        doc["output_coherence"] = cm.coherence_frobenius(out)
        doc["input_coherence"] = cm.coherence_frobenius(rho)
        if args.out:
            _write_text(args.out, qio.dumps(qio.state_doc(out)))
            doc["written"] = str(args.out)
    emit(args, doc)
    return EXIT_OK


def _entropy_gap(e, rho, source: str):
    """Gap for the entropy-production bound. Projective measurements use the
    overlap matrix with the state's eigenbasis; other channels use the
    superoperator gap."""
    if not ch.is_unital(e, tol=1e-8).unital:
        raise NotUnital("entropy production bound needs a unital channel")
    basis = ch.measurement_basis(e)
    if source == "overlap" or (source == "auto" and basis is not None):
        if basis is None:
            raise Inapplicable("overlap gap needs a projective-measurement channel")
        return ch.spectral_gap_projection(ch.overlap_matrix(rho.eig.eigenvectors, basis)), "overlap"
    return ch.superoperator_spectral_gap(e), "superoperator"


# -- asymmetry ------------------------------------------------------------------------

def _group_spec(group: str, dim: int) -> GroupSpec:
    if dim < 2 or dim & (dim - 1):
        raise Inapplicable(f"rotation groups act on qubits; d={dim} is not a power of two")
    n = dim.bit_length() - 1
    if group == "su2":
        if n != 1:
            raise Inapplicable(f"group su2 acts on one qubit; got d={dim} (use independent or collective)")
        return GroupSpec.single()
    if group == "independent":
        return GroupSpec.independent(n)
    return GroupSpec.collective(n)


def _numeric_method(args):
    if args.method == "mc":
        return MonteCarlo(samples=args.samples, seed=args.seed)
    return Quadrature()


def cmd_asymmetry(args) -> int:
    rho = qio.load_state(args.state)
    spec = _group_spec(args.group, rho.dim)
    doc = {"dim": rho.dim, "group": args.group, "qubits": spec.n, "method": args.method}
    analytic = None
    if args.method == "analytic" or args.compare:
        analytic = asym.closed_form(rho, spec)
        if analytic is None:
            raise Inapplicable(f"no closed form for {spec.kind} rotations on {spec.n} qubits; use --method mc or quadrature")
    if args.method == "analytic" and not args.compare:
        doc["asymmetry"] = analytic
        doc["symmetry"] = 1.0 - analytic
    else:
        est = asym.asymmetry_estimate(rho, spec, _numeric_method(args))
        doc["asymmetry"] = est.asymmetry
        doc["symmetry"] = est.symmetry
        if args.method == "mc":
            doc["stderr"] = est.stderr
            doc["samples"] = args.samples
            doc["seed"] = args.seed
        if args.compare:
            doc["method"] = "mc" if args.method == "mc" else "quadrature"
            doc["analytic"] = analytic
            doc["difference"] = est.asymmetry - analytic
    doc["purity"] = purity(rho)
    if args.twirl_out:
        tw = asym.twirl(rho, spec, _numeric_method(args))
        _write_text(args.twirl_out, qio.dumps(qio.state_doc(tw)))
        doc["written"] = str(args.twirl_out)
    emit(args, doc)
    return EXIT_OK


# -- verify / sweep ----------------------------------------------------------------------

def cmd_verify(args) -> int:
    results = vf.run(args.suite, seed=args.seed, tol=args.tol, cases=args.cases)
    text = vf.format_json(results, args.seed) if args.json else vf.format_text(results, args.seed)
    sys.stdout.write(text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _write_text(path, text: str):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def cmd_sweep(args) -> int:
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    points = sw.grid(args.start, args.stop, args.steps)
    try:
        header, rows = sw.sweep(args.kind, points, _numeric_method(args), n_qubits=args.n_qubits)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = sw.to_csv(header, rows)
    if args.out:
        _write_text(args.out, text)
    if args.json:
        print(json.dumps({"kind": args.kind, "header": header, "rows": rows, "out": args.out}, indent=1))
    elif not args.out:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand; SUPPRESS keeps
    # a subcommand-level default from clobbering a value given up front
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (default 0)")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="validation and pass/fail tolerance (default 1e-10)")

    p = argparse.ArgumentParser(prog="qcoherence", parents=[common],
                                description="Frobenius-norm coherence, channel and asymmetry calculator.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coherence", parents=[common], help="coherence measures of a state file")
    c.add_argument("state")
    c.add_argument("--measure", action="append", choices=MEASURES)
    c.add_argument("--all", action="store_true", help="every applicable measure plus the bound chain")
    c.add_argument("--basis", help="basis file for basis-dependent measures (default computational)")
    c.set_defaults(func=cmd_coherence)

    c = sub.add_parser("channel", parents=[common], help="analyse a Kraus channel file")
    c.add_argument("channel")
    c.add_argument("--cohering-power", action="store_true")
    c.add_argument("--unital", action="store_true")
    c.add_argument("--spectral-gap", action="store_true", help="superoperator gap (unital channels)")
    c.add_argument("--entropy-production", metavar="STATE", help="check S(E(rho)) - S(rho) >= gamma/2 ||rho - I/d||^2")
    c.add_argument("--gap-source", choices=("auto", "overlap", "superoperator"), default="auto")
    c.add_argument("--apply", metavar="STATE", help="apply the channel to a state")
    c.add_argument("--out", help="write the output state of --apply")
    c.set_defaults(func=cmd_channel)

    c = sub.add_parser("asymmetry", parents=[common], help="asymmetry under SU(2) rotations")
    c.add_argument("state")
    c.add_argument("--group", choices=("su2", "independent", "collective"), default="su2")
    c.add_argument("--method", choices=("analytic", "mc", "quadrature"), default="analytic")
    c.add_argument("--samples", type=int, default=200_000)
    c.add_argument("--compare", action="store_true", help="analytic vs numerical")
    c.add_argument("--twirl-out", help="write the twirled state")
    c.set_defaults(func=cmd_asymmetry)

    c = sub.add_parser("verify", parents=[common], help="run property suites")
    c.add_argument("suite", choices=vf.ORDER + ["all"])
    c.add_argument("--cases", type=int, help="override the per-property case count")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("sweep", parents=[common], help="tabulate closed forms against numerics as CSV")
    c.add_argument("kind", choices=sw.KINDS)
    c.add_argument("--start", type=float, default=0.0)
    c.add_argument("--stop", type=float, default=1.0)
    c.add_argument("--steps", type=int, default=11)
    c.add_argument("--n-qubits", type=int, default=2)
    c.add_argument("--method", choices=("quadrature", "mc"), default="quadrature")
    c.add_argument("--samples", type=int, default=200_000)
    c.add_argument("--out", help="CSV path (default stdout)")
    c.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # the global actions are shared with every subparser, so their defaults
    # stay SUPPRESS and are filled in here
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if not args.tol > 0:
        parser.error("--tol must be positive")
    if getattr(args, "samples", 1) < 1:
        parser.error("--samples must be positive")
    tol = args.tol
    try:
        with override_tolerances(hermitian=tol, trace=tol, psd=tol, trace_preserving=tol,
                                 unital=tol, orthonormal=tol, bloch=tol):
            return args.func(args)
    except (Inapplicable, NotPowerOfTwo) as exc:
        print(f"qcoherence: not applicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except NotUnital as exc:
        print(f"qcoherence: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (UsageError, QCoherenceError) as exc:
        print(f"qcoherence: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

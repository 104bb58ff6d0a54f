"""pfsolve command line interface.

Subcommands: model (generators), analyze (graph diagnostics), poly
(weights + independence polynomial), spectrum (energies + predicted
spectrum), verify (dense-matrix check suite).

Exit codes: 0 success / all checks pass, 1 a verification check failed,
2 usage or input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import analyze_hamiltonian, complex_pair, energies_dict
from .errors import (
    AdmissibilityError,
    HamiltonianFormatError,
    ResourceLimitError,
)
from .graphs import is_oriented_indifference
from .hamiltonian import build_frustration_graph
from .indpoly import indpoly, weights_for_spectrum
from .models import (
    gen_alcaraz_pimenta,
    gen_baxter,
    gen_three_coupling,
    emit_hamiltonian,
    parse_hamiltonian,
)
from .oracle import CheckReport, DenseOracle, check_root_of_unity_identities
from .spectrum import (
    FULL_SPECTRUM_CAP,
    full_spectrum,
    single_particle_energies,
)

CHECK_NAMES = (
    "charges_commute",
    "transfer_factorization",
    "mode_commutator",
    "mode_exchange",
    "projectors",
    "energy_decomposition",
    "spectrum",
    "root_identities",
)
_MODE_CHECKS = {
    "mode_commutator", "mode_exchange", "projectors", "energy_decomposition",
}


def _jsonify(value):
    """Map tuples, complex values, and numpy scalars onto JSON types."""
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, complex):
        return complex_pair(value)
    if isinstance(value, bool):
        return value
    if hasattr(value, "item"):
        return _jsonify(value.item())
    if isinstance(value, float) and value != value:
        return None
    return value


def _dump(obj) -> str:
    return json.dumps(_jsonify(obj), indent=2, sort_keys=True) + "\n"


def _write(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load(path: str):
    with open(path) as fh:
        return parse_hamiltonian(fh.read())


def _parse_couplings(raw: str):
    parts = raw.split(",")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise HamiltonianFormatError(
            "could not parse coupling list %r" % raw
        ) from None
    return values[0] if len(values) == 1 else values


def cmd_model(args) -> int:
    family = args.family
    allowed = {
        "baxter": {"n", "d", "a", "b"},
        "alcaraz_pimenta": {"n", "p", "d", "a"},
        "three_coupling": {"n", "d", "a", "b", "c", "dd", "e", "f"},
    }[family]
    given = {
        name for name in ("n", "p", "d", "a", "b", "c", "dd", "e", "f")
        if getattr(args, name) is not None
    }
    stray = given - allowed
    if stray:
        raise HamiltonianFormatError(
            "%s does not take --%s" % (family, ", --".join(sorted(stray)))
        )
    if args.n is None:
        raise HamiltonianFormatError("--n is required")
    d = 3 if args.d is None else args.d

    def coup(name, default=1.0):
        raw = getattr(args, name)
        return default if raw is None else _parse_couplings(raw)

    if family == "baxter":
        ham = gen_baxter(args.n, d, coup("a"), coup("b"))
    elif family == "alcaraz_pimenta":
        ham = gen_alcaraz_pimenta(args.n, 1 if args.p is None else args.p,
                                  d, coup("a"))
    else:
        if d != 3:
            raise HamiltonianFormatError("three_coupling requires d = 3")
        ham = gen_three_coupling(args.n, coup("a"), coup("b"), coup("c"),
                                 coup("dd"), coup("e"), coup("f"))
    _write(emit_hamiltonian(ham) + "\n", args.out)
    return 0


def cmd_analyze(args) -> int:
    ham = _load(getattr(args, "in"))
    report = analyze_hamiltonian(ham)
    if args.dot is not None:
        if report.graph is None:
            sys.stderr.write("no frustration graph: inadmissible input\n")
        else:
            _write(report.graph.to_dot(), args.dot)
    _write(_dump(report.as_dict()), args.out)
    return 0


def cmd_poly(args) -> int:
    ham = _load(getattr(args, "in"))
    graph = build_frustration_graph(ham)
    weights = weights_for_spectrum(ham)
    poly = indpoly(graph, weights)
    _write(_dump({"weights": weights, "indpoly": list(poly.coeffs)}),
           args.out)
    return 0


def cmd_spectrum(args) -> int:
    ham = _load(getattr(args, "in"))
    graph = build_frustration_graph(ham)
    ordering = is_oriented_indifference(graph)
    if ordering is None:
        sys.stderr.write(
            "frustration graph is not an oriented indifference graph; "
            "no free-spectrum prediction exists\n"
        )
        return 2
    poly = indpoly(graph, weights_for_spectrum(ham))
    sp = single_particle_energies(poly, ham.dims.d)
    cap = FULL_SPECTRUM_CAP if args.cap is None else args.cap
    pred = full_spectrum(sp, cap=cap, truncate=True)
    _write(
        _dump({
            "energies": energies_dict(sp),
            "spectrum": [complex_pair(z) for z in pred.values],
            "alpha": pred.alpha,
            "truncated": pred.truncated,
        }),
        args.out,
    )
    return 0


def _run_checks(oracle: DenseOracle, names, seed: int, tol: float):
    reports = []
    modes = None
    modes_error = None
    for name in names:
        try:
            if name in _MODE_CHECKS:
                if modes_error is not None:
                    raise modes_error
                if modes is None:
                    try:
                        modes = oracle.modes()
                    except ResourceLimitError:
                        raise
                    except Exception as exc:
                        modes_error = exc
                        raise
            if name == "charges_commute":
                reports.append(oracle.check_charges_commute(tol))
            elif name == "transfer_factorization":
                reports.append(oracle.check_transfer_factorization(seed, 5, tol))
            elif name == "mode_commutator":
                reports.append(oracle.check_mode_commutator(tol, modes))
            elif name == "mode_exchange":
                reports.append(oracle.check_mode_exchange(tol, modes))
            elif name == "projectors":
                reports.append(oracle.check_projectors(tol, modes))
            elif name == "energy_decomposition":
                reports.append(oracle.check_energy_decomposition(tol, modes))
            elif name == "spectrum":
                reports.append(oracle.check_spectrum(max(tol, 1e-6)))
            else:
                reports.append(
                    check_root_of_unity_identities(oracle.dims.d)
                )
        except ResourceLimitError:
            raise
        except Exception as exc:
            reports.append(CheckReport(
                name, False, float("inf"), tol,
                {"error": "%s: %s" % (type(exc).__name__, exc)},
            ))
    return reports


def cmd_verify(args) -> int:
    ham = _load(getattr(args, "in"))
    requested = args.checks.split(",")
    names = []
    for token in requested:
        token = token.strip()
        if token == "all":
            names.extend(CHECK_NAMES)
        elif token in CHECK_NAMES:
            names.append(token)
        else:
            raise HamiltonianFormatError(
                "unknown check %r (known: %s, all)"
                % (token, ", ".join(CHECK_NAMES))
            )
    oracle = DenseOracle(ham)
    reports = _run_checks(oracle, names, args.seed, args.tol)
    ok = all(r.passed for r in reports)
    _write(
        _dump({
            "seed": args.seed,
            "tolerance": args.tol,
            "checks": [r.as_dict() for r in reports],
            "pass": ok,
        }),
        args.out,
    )
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfsolve",
        description="Frustration-graph analysis and free-spectrum "
        "verification for qudit Hamiltonians.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_model = sub.add_parser(
        "model",
        help="generate a built-in model as interchange JSON",
        description="Families: baxter (couplings a between neighbouring "
        "sites, fields b; n+1 sites), alcaraz_pimenta (n terms, window "
        "p, couplings --a as a comma list), three_coupling (d=3 chain; "
        "fractional sites j, j+1/3, j+2/3 of cell j map to flat qudit "
        "indices 3(j-1), 3(j-1)+1, 3(j-1)+2, and site n+1 to index 3n).",
    )
    p_model.add_argument("family",
                         choices=("baxter", "alcaraz_pimenta",
                                  "three_coupling"))
    p_model.add_argument("--n", type=int)
    p_model.add_argument("--p", type=int)
    p_model.add_argument("--d", type=int)
    for flag in ("a", "b", "c", "dd", "e", "f"):
        p_model.add_argument("--%s" % flag, type=str)
    p_model.add_argument("--out")
    p_model.set_defaults(func=cmd_model)

    p_analyze = sub.add_parser(
        "analyze", help="admissibility, frustration graph, orderings",
    )
    p_analyze.add_argument("--in", required=True)
    p_analyze.add_argument("--dot", help="write the frustration graph here")
    p_analyze.add_argument("--out")
    p_analyze.set_defaults(func=cmd_analyze)

    p_poly = sub.add_parser(
        "poly", help="spectral weights and independence polynomial",
    )
    p_poly.add_argument("--in", required=True)
    p_poly.add_argument("--out")
    p_poly.set_defaults(func=cmd_poly)

    p_spec = sub.add_parser(
        "spectrum", help="single-particle energies and predicted spectrum",
    )
    p_spec.add_argument("--in", required=True)
    p_spec.add_argument("--cap", type=int, default=None,
                        help="truncate the predicted spectrum to this many "
                        "values (lexicographic occupation order)")
    p_spec.add_argument("--out")
    p_spec.set_defaults(func=cmd_spectrum)

    p_verify = sub.add_parser(
        "verify", help="dense-matrix verification suite",
    )
    p_verify.add_argument("--in", required=True)
    p_verify.add_argument("--seed", type=int, required=True)
    p_verify.add_argument("--tol", type=float, default=1e-8)
    p_verify.add_argument(
        "--checks", default="all",
        help="comma list: %s, or all" % ",".join(CHECK_NAMES),
    )
    p_verify.add_argument("--out")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (HamiltonianFormatError, AdmissibilityError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except ResourceLimitError as exc:
        sys.stderr.write("resource cap: %s\n" % exc)
        return 3
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except OSError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()

"""Deterministic command-line front end.

Reports go to standard output as JSON, diagnostics to standard error,
nothing else is printed.  Exit status: 0 on success / verified, 2 when
a verification property fails to hold, 1 for usage, I/O, or parse
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exactfield import FIELD_Q, FIELD_QI, format_scalar, parse_scalar
from .liealg import (
    JacobiError,
    LieAlgebra,
    check_jacobi,
    load,
    make_abelian,
    make_heisenberg,
    make_schrodinger,
    make_sl2,
    schrodinger_rank,
    to_json,
)
from .linalg import Matrix, Subspace, subspace_intersect, subspace_sum
from .dersolve import (
    decompose,
    derivation_space,
    flatten_map,
    inner_space,
    is_derivation,
    outer_span,
    sigma,
    sigma_pairs,
    tau,
)
from .locder import (
    DEFAULT_MAX_PROBES,
    DEFAULT_SEED,
    DEFAULT_STALL_LIMIT,
    basis_probe_space,
    certify_local_symbolic,
    random_probe_closure,
    replay_proof,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(message)


class CliError(Exception):
    pass


def _emit(report: dict, out_path=None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_algebra(path: str) -> LieAlgebra:
    try:
        return load(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except JacobiError:
        raise
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _matrix_text(m: Matrix) -> list:
    return [[format_scalar(x) for x in row] for row in m.entries]


def _parse_map(path: str, L: LieAlgebra) -> Matrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: malformed JSON: {exc}") from exc
    rows = doc.get("matrix") if isinstance(doc, dict) else doc
    if not isinstance(rows, list) or len(rows) != L.dim:
        raise CliError(f"{path}: expected a {L.dim}x{L.dim} matrix")
    try:
        entries = [[parse_scalar(x, L.field) for x in row] for row in rows]
    except (ValueError, TypeError) as exc:
        raise CliError(f"{path}: bad scalar: {exc}") from exc
    if any(len(r) != L.dim for r in entries):
        raise CliError(f"{path}: expected a {L.dim}x{L.dim} matrix")
    return Matrix(L.field, entries)


def _cmd_gen(args) -> int:
    if args.schrodinger is not None:
        L = make_schrodinger(args.schrodinger, args.field)
    elif args.heisenberg is not None:
        L = make_heisenberg(args.heisenberg, args.field)
    elif args.abelian is not None:
        L = make_abelian(args.abelian, args.field)
    else:
        L = make_sl2(args.field)
    text = to_json(L)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_jacobi(args) -> int:
    try:
        L = _load_algebra(args.input)
    except JacobiError as exc:
        _emit({"algebra": args.input, "jacobi": False, "failing_triple": list(exc.triple)})
        return 2
    verdict = check_jacobi(L)
    _emit(
        {
            "algebra": L.name,
            "dim": L.dim,
            "field": L.field,
            "jacobi": verdict.ok,
            "failing_triple": list(verdict.failing_triple) if verdict.failing_triple else None,
        }
    )
    return 0 if verdict.ok else 2


def _algebra_from_args(args) -> LieAlgebra:
    if getattr(args, "input", None):
        return _load_algebra(args.input)
    if getattr(args, "n", None) is None:
        raise CliError("provide an algebra file or --n for the Schrodinger algebra")
    return make_schrodinger(args.n, args.field)


def _cmd_der(args) -> int:
    L = _algebra_from_args(args)
    der = derivation_space(L)
    inn = inner_space(L)
    report = {
        "algebra": L.name,
        "dim": L.dim,
        "field": L.field,
        "der_dim": der.dim,
        "inner_dim": inn.dim,
        "outer_dim": der.dim - inn.dim,
    }
    if args.basis:
        report["basis"] = [_matrix_text(D) for D in der.basis]
    _emit(report, args.output)
    return 0


def _cmd_outer_check(args) -> int:
    n = args.n
    if n < 2:
        raise CliError("outer-check needs --n >= 2 (pair rotations require two indices)")
    L = make_schrodinger(n, args.field)
    der = derivation_space(L)
    inn = inner_space(L)
    checks = {}
    ok = True
    for (l, k) in sigma_pairs(n):
        verdict = is_derivation(L, sigma(n, l, k, args.field))
        checks[f"sigma_{l}{k}_leibniz"] = verdict.ok
        ok &= verdict.ok
    checks["tau_leibniz"] = is_derivation(L, tau(n, args.field)).ok
    ok &= checks["tau_leibniz"]
    span_sigma = outer_span(n, args.field)
    meet = subspace_intersect(span_sigma, inn)
    checks["sigma_span_meets_inner_trivially"] = meet.dim == 0
    ok &= meet.dim == 0
    tau_flat = flatten_map(tau(n, args.field))
    inn_sigma = subspace_sum(inn, span_sigma)
    checks["tau_outside_inner_plus_sigma"] = not inn_sigma.contains(tau_flat)
    ok &= checks["tau_outside_inner_plus_sigma"]
    tau_span = Subspace.from_vectors(L.field, L.dim * L.dim, [tau_flat])
    full = subspace_sum(inn_sigma, tau_span)
    checks["inner_plus_sigma_plus_tau_equals_der"] = full == der.subspace
    ok &= checks["inner_plus_sigma_plus_tau_equals_der"]
    _emit(
        {
            "algebra": L.name,
            "n": n,
            "field": args.field,
            "der_dim": der.dim,
            "inner_dim": inn.dim,
            "sigma_count": len(sigma_pairs(n)),
            "checks": checks,
            "ok": ok,
        },
        args.output,
    )
    return 0 if ok else 2


def _cmd_locder_basis(args) -> int:
    L = _algebra_from_args(args)
    der = derivation_space(L)
    acc = basis_probe_space(L, der)
    n = schrodinger_rank(L)
    _emit(
        {
            "algebra": L.name,
            "n": n,
            "field": L.field,
            "der_dim": der.dim,
            "candidate_dim": acc.dim,
            "equal": acc.dim == der.dim,
            "history": [
                {"probe": s.probe, "dim_before": s.dim_before, "dim_after": s.dim_after}
                for s in acc.history
            ],
            "seed": None,
        },
        args.output,
    )
    return 0


def _cmd_locder_replay(args) -> int:
    if args.field != FIELD_QI:
        raise CliError("the replay schedule requires --field Qi")
    result = replay_proof(args.n)
    _emit(result.to_report(), args.output)
    return 0 if result.equal else 2


def _cmd_locder_random(args) -> int:
    L = _algebra_from_args(args)
    result = random_probe_closure(
        L, seed=args.seed, max_probes=args.max_probes, stall_limit=args.stall
    )
    _emit(result.to_report(), args.output)
    return 0 if result.equal else 2


def _cmd_certify(args) -> int:
    L = _load_algebra(args.input)
    delta = _parse_map(args.map, L)
    der = derivation_space(L)
    leibniz = is_derivation(L, delta)
    cert = certify_local_symbolic(L, der, delta)
    report = {
        "algebra": L.name,
        "field": L.field,
        "der_dim": der.dim,
        "is_derivation": leibniz.ok,
        "leibniz_failing_pair": list(leibniz.failing_pair) if leibniz.failing_pair else None,
        "local": cert.certified,
        "refutation": None
        if cert.refutation is None
        else [format_scalar(c) for c in cert.refutation.coords],
        "strata": list(cert.strata),
    }
    _emit(report, args.output)
    return 0 if cert.certified else 2


def _cmd_demo_heisenberg(args) -> int:
    L = make_heisenberg(1, FIELD_Q)
    der = derivation_space(L)
    d = L.dim
    rows = [[0] * d for _ in range(d)]
    rows[L.index["z"]][L.index["z"]] = 1
    delta = Matrix(FIELD_Q, rows)
    leibniz = is_derivation(L, delta)
    cert = certify_local_symbolic(L, der, delta)
    closure = random_probe_closure(
        L, seed=args.seed, max_probes=args.max_probes, stall_limit=args.stall, der=der
    )
    report = closure.to_report()
    report["demo"] = {
        "map": _matrix_text(delta),
        "is_derivation": leibniz.ok,
        "leibniz_failing_pair": list(leibniz.failing_pair) if leibniz.failing_pair else None,
        "certified_local": cert.certified,
        "pure_local_derivation": cert.certified and not leibniz.ok,
        "local_der_dim_exceeds_der_dim": closure.candidate_dim > der.dim,
    }
    _emit(report, args.output)
    exhibited = report["demo"]["pure_local_derivation"] and closure.candidate_dim > der.dim
    return 0 if exhibited else 2


def _cmd_decompose(args) -> int:
    L = _algebra_from_args(args)
    if schrodinger_rank(L) is None:
        raise CliError("decompose requires a generated Schrodinger algebra")
    delta = _parse_map(args.map, L)
    verdict = is_derivation(L, delta)
    if not verdict.ok:
        _emit(
            {
                "algebra": L.name,
                "field": L.field,
                "is_derivation": False,
                "leibniz_failing_pair": list(verdict.failing_pair),
            },
            args.output,
        )
        return 2
    dec = decompose(L, delta)
    _emit(
        {
            "algebra": L.name,
            "field": L.field,
            "is_derivation": True,
            "inner_part": [format_scalar(c) for c in dec.inner_part.coords],
            "sigma_coeffs": {
                f"{l},{k}": format_scalar(c) for (l, k), c in sorted(dec.sigma_coeffs.items())
            },
            "tau_coeff": format_scalar(dec.tau_coeff),
        },
        args.output,
    )
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="liederiv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, field_default=FIELD_Q, with_n=False, with_input=False, with_seed=False):
        p.add_argument("--field", choices=[FIELD_Q, FIELD_QI], default=field_default)
        p.add_argument("-o", "--output", metavar="PATH", default=None)
        if with_n:
            p.add_argument("--n", type=int, default=None)
        if with_input:
            p.add_argument("input", nargs="?", default=None, metavar="ALGEBRA_FILE")
        if with_seed:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
            p.add_argument("--max-probes", type=int, default=DEFAULT_MAX_PROBES)
            p.add_argument("--stall", type=int, default=DEFAULT_STALL_LIMIT)

    p = sub.add_parser("gen", help="generate a structure-constant file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--schrodinger", type=int, metavar="N")
    group.add_argument("--heisenberg", type=int, metavar="N")
    group.add_argument("--sl2", action="store_true")
    group.add_argument("--abelian", type=int, metavar="K")
    common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("jacobi", help="verify the Jacobi identity of a file")
    p.add_argument("input", metavar="ALGEBRA_FILE")
    p.set_defaults(func=_cmd_jacobi)

    p = sub.add_parser("der", help="compute the derivation algebra")
    common(p, with_n=True, with_input=True)
    p.add_argument("--basis", action="store_true", help="include the basis matrices")
    p.set_defaults(func=_cmd_der)

    p = sub.add_parser("outer-check", help="verify the outer-derivation decomposition")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_outer_check)

    p = sub.add_parser("locder-basis", help="basis-singleton candidate space")
    common(p, with_n=True, with_input=True)
    p.set_defaults(func=_cmd_locder_basis)

    p = sub.add_parser("locder-replay", help="deterministic local-derivation verification")
    common(p, field_default=FIELD_QI)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_locder_replay)

    p = sub.add_parser("locder-random", help="seeded random-probe closure")
    common(p, with_n=True, with_input=True, with_seed=True)
    p.set_defaults(func=_cmd_locder_random)

    p = sub.add_parser("certify", help="symbolic locality certificate for a map")
    p.add_argument("input", metavar="ALGEBRA_FILE")
    p.add_argument("--map", required=True, metavar="MAP_FILE")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser(
        "demo-heisenberg", help="exhibit a local non-derivation on the 3-dim Heisenberg algebra"
    )
    common(p, with_seed=True)
    p.set_defaults(func=_cmd_demo_heisenberg)

    p = sub.add_parser("decompose", help="resolve a derivation against inner + sigma + tau")
    common(p, with_n=True, with_input=True)
    p.add_argument("--map", required=True, metavar="MAP_FILE")
    p.set_defaults(func=_cmd_decompose)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except JacobiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Commands: info, matrix, verify, charges, braid, integral.  Exit codes:
0 success, 1 verification failure, 2 usage error.  ``CHAINGAMMA_PREC``
overrides the default precision when --prec is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import chain as chain_mod
from . import gamma as gamma_mod
from . import lattice as lattice_mod
from . import serialize
from .errors import ChainGammaError
from .exact import (
    euler_matrix,
    grading_matrix,
    intersection_matrix,
    pairing_matrix,
    serre_matrix,
)
from .precision import PrecContext, mpc_to_json, mpfr_decimal
from .quadrature import orthant_integral_quadrature
from .verify import SUITES, run_suite

MATRIX_BUILDERS = {
    "eta": pairing_matrix,
    "qtilde": grading_matrix,
    "chi": euler_matrix,
    "serre": serre_matrix,
    "intersection": intersection_matrix,
}


def _default_prec() -> int:
    env = os.environ.get("CHAINGAMMA_PREC")
    return int(env) if env else 128


def _parse_chain(parser: argparse.ArgumentParser, text: str):
    try:
        values = [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        parser.error(f"cannot parse chain {text!r}: expected comma-separated integers")
    try:
        return chain_mod.new_chain(values)
    except ChainGammaError as exc:
        parser.error(str(exc))


def _emit(payload: dict, fmt: str, table_text: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(table_text)


def cmd_info(parser, args) -> int:
    c = _parse_chain(parser, args.chain)
    weights = chain_mod.rational_weights(c)
    sectors = chain_mod.index_set(c)
    full, prime = chain_mod.monomial_basis(c)
    ages = {
        kappa: chain_mod.symmetry_generator(c, kappa).age
        for kappa in chain_mod.prime_index_level(c, c.n)
    }
    payload = {
        "chain": list(c.a),
        "n": c.n,
        "degrees": list(c.d),
        "mu": c.mu,
        "weights": [serialize.frac_str(w) for w in weights],
        "index_set": [str(s) for s in sectors],
        "basis_full": [",".join(map(str, k)) for k in full],
        "basis_reduced": [",".join(map(str, k)) for k in prime],
        "ages": {str(k): serialize.frac_str(v) for k, v in ages.items()},
    }
    lines = [
        f"chain      {list(c.a)}",
        f"n          {c.n}",
        f"degrees    {list(c.d)}",
        f"mu         {c.mu}",
        "weights    [" + ", ".join(serialize.frac_str(w) for w in weights) + "]",
        "index set  [" + ", ".join(str(s) for s in sectors) + "]",
        "basis B    [" + ", ".join("(" + ",".join(map(str, k)) + ")" for k in full) + "]",
        "basis B'   [" + ", ".join("(" + ",".join(map(str, k)) + ")" for k in prime) + "]",
        "ages       {"
        + ", ".join(f"{k}: {serialize.frac_str(v)}" for k, v in ages.items())
        + "}",
    ]
    _emit(payload, args.format, "\n".join(lines))
    if args.format == "csv":
        print("key,value")
        for key, value in payload.items():
            print(f"{key},\"{value}\"")
    return 0


def cmd_matrix(parser, args) -> int:
    c = _parse_chain(parser, args.chain)
    which = args.which
    if which == "chgamma":
        ctx = PrecContext(args.prec)
        mat = gamma_mod.ch_gamma_matrix(c, ctx)
        payload = {"chain": list(c.a), "name": which, **serialize.complex_matrix_json(mat)}
        if args.format == "json":
            print(json.dumps(payload, sort_keys=True))
        elif args.format == "csv":
            print(serialize.complex_matrix_csv(mat), end="")
        else:
            print(serialize.complex_matrix_table(mat))
        return 0
    builder = MATRIX_BUILDERS.get(which)
    if builder is None:
        parser.error(f"unknown matrix name {which!r}")
    mat = builder(c)
    payload = {"chain": list(c.a), "name": which, **serialize.rational_matrix_json(mat)}
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        print(serialize.rational_matrix_csv(mat), end="")
    else:
        print(serialize.rational_matrix_table(mat))
    return 0


def cmd_verify(parser, args) -> int:
    c = _parse_chain(parser, args.chain)
    ctx = PrecContext(args.prec)
    suites = SUITES if args.suite == "all" else (args.suite,)
    report = run_suite(c, ctx, suites=suites)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), sort_keys=True))
    else:
        print(report.to_table())
    return 0 if report.overall_pass else 1


def cmd_charges(parser, args) -> int:
    c = _parse_chain(parser, args.chain)
    if args.jmax < 1:
        parser.error("--jmax must be >= 1")
    ctx = PrecContext(args.prec)
    values = gamma_mod.central_charges(c, args.jmax, ctx)
    step = gamma_mod.gepner_step(c)
    import gmpy2

    with ctx.active():
        rows = []
        for j, z in enumerate(values, start=1):
            modulus = abs(z)
            phase = gmpy2.atan2(z.imag, z.real) / (2 * gmpy2.const_pi())
            rows.append(
                {
                    "j": j,
                    **mpc_to_json(z, ctx.digits),
                    "modulus": mpfr_decimal(modulus, ctx.digits),
                    "phase": mpfr_decimal(phase, 20),
                }
            )
    payload = {
        "chain": list(c.a),
        "digits": ctx.digits,
        "gepner_step": serialize.frac_str(step),
        "charges": rows,
    }
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        print("j,re,im,modulus,phase")
        for row in rows:
            print(f"{row['j']},{row['re']},{row['im']},{row['modulus']},{row['phase']}")
    else:
        print(f"chain {list(c.a)}  rotation step e[{serialize.frac_str(step)}]")
        for row in rows:
            print(f"  j={row['j']}: {row['re']} + {row['im']} i   |Z|={row['modulus'][:24]}")
    return 0


def cmd_braid(parser, args) -> int:
    c = _parse_chain(parser, args.chain)
    if args.basis == "standard":
        seq = lattice_mod.standard_sequence(c)
    else:
        try:
            vectors = json.loads(args.basis)
        except json.JSONDecodeError:
            parser.error("--basis must be 'standard' or a JSON list of vectors")
        seq = lattice_mod.sequence_from_vectors(c, vectors)
    try:
        result = lattice_mod.braid_word_apply(seq, args.word)
    except ChainGammaError as exc:
        parser.error(str(exc))
    payload = {
        "chain": list(c.a),
        "word": args.word,
        "vectors": [list(v) for v in result.vectors],
        "gram": result.gram(),
    }
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print("vectors:")
        for v in result.vectors:
            print("  " + str(list(v)))
        print("gram:")
        for row in result.gram():
            print("  " + str(row))
    return 0


def cmd_integral(parser, args) -> int:
    c = _parse_chain(parser, args.chain)
    try:
        k = tuple(int(x) for x in args.monomial.split(",")) if args.monomial else (0,) * c.n
    except ValueError:
        parser.error(f"cannot parse monomial {args.monomial!r}")
    ctx = PrecContext(args.prec)
    try:
        closed = gamma_mod.orthant_integral_closed_form(c, k, ctx)
    except ChainGammaError as exc:
        parser.error(str(exc))
    payload = {
        "chain": list(c.a),
        "monomial": ",".join(map(str, k)),
        "closed_form": mpfr_decimal(closed, ctx.digits),
        "digits": ctx.digits,
    }
    if args.quadrature:
        try:
            payload["quadrature"] = orthant_integral_quadrature(c, k, args.rel_err)
            payload["rel_err"] = args.rel_err
        except ChainGammaError as exc:
            parser.error(str(exc))
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"closed form  {payload['closed_form']}")
        if "quadrature" in payload:
            print(f"quadrature   {payload['quadrature']!r} (target rel err {args.rel_err})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaingamma",
        description="Exact and arbitrary-precision invariants of chain exponent lists.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, prec=True):
        p.add_argument("--chain", required=True, help="comma-separated exponents, e.g. 2,3,2")
        p.add_argument("--format", choices=("json", "csv", "table"), default="table")
        if prec:
            p.add_argument("--prec", type=int, default=_default_prec(), help="decimal digits")

    p = sub.add_parser("info", help="degrees, weights, index set, bases, ages")
    common(p, prec=False)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("matrix", help="print one of the invariant matrices")
    p.add_argument("which", choices=("eta", "qtilde", "chi", "serre", "chgamma", "intersection"))
    common(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("charges", help="central charges Z(E_1..E_jmax)")
    common(p)
    p.add_argument("--jmax", type=int, default=4)
    p.set_defaults(func=cmd_charges)

    p = sub.add_parser("braid", help="apply a braid/parity word to a sequence")
    common(p, prec=False)
    p.add_argument("--word", required=True, help="e.g. 'b1 b2^-1 p3'")
    p.add_argument("--basis", default="standard", help="'standard' or JSON vectors")
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("integral", help="orthant integral, closed form and oracle")
    common(p)
    p.add_argument("--monomial", default="", help="comma-separated exponents (default all 0)")
    p.add_argument("--quadrature", action="store_true", help="also run the quadrature oracle")
    p.add_argument("--rel-err", type=float, default=1e-6, dest="rel_err")
    p.set_defaults(func=cmd_integral)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except ChainGammaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

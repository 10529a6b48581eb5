"""Command-line harness: verification suites, table generation, operator
synthesis, and machine-readable export.

Rationals are parsed and serialized as "p/q" strings end to end, so the
zero-residual semantics survive the wire.  All outputs are deterministic for
a fixed configuration: records sort by identity and JSON keys are ordered;
wall-clock data sits in a separate "timings" field that --no-timings drops.

Exit status: 0 all checks pass, 1 a suite failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import suites
from .jacobi import JacobiParams, jacobi_poly, qhat_poly, q_poly
from .krall import (KrallContext, f2_f3_generators, intertwiner_Bpsi,
                    synthesize_Bf)
from .measures import sobolev_gram
from .operators import AlgElem
from .poly import MPoly, rat, rat_str
from .report import VerdictReport
from .simplex import (Q_poly, SimplexParams, multi_indices, simplex_jacobi)

SUITES = ("jacobi", "krall", "simplex", "darboux", "orth", "all")
TABLE_KINDS = ("jacobi", "q", "qhat", "simplex", "Q", "operators", "gram")


def _fraction(text: str) -> Fraction:
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _fraction_list(text: str) -> list:
    return [_fraction(part) for part in text.split(",") if part != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alde",
        description="Exact verification engine for Darboux-transformed "
                    "Jacobi and Appell-Lauricella polynomial families.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--alpha", type=_fraction, default=Fraction(0))
        p.add_argument("--beta", type=_fraction, default=Fraction(1))
        p.add_argument("--gamma", type=_fraction_list, default=None,
                       help="comma-separated gamma_1..gamma_{d+1}")
        p.add_argument("--d", type=int, default=2)
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--a0", type=_fraction, default=None)
        p.add_argument("--a", type=_fraction_list, default=None,
                       help="comma-separated free constants a_0..a_{k-1}")
        p.add_argument("--nmax", type=int, default=4)
        p.add_argument("--wordlen", type=int, default=None,
                       help="cap on the synthesis word-length search")
        p.add_argument("--out", default=None, help="report/table output path")
        p.add_argument("--format", choices=("json", "csv"), default=None)
        p.add_argument("--no-timings", action="store_true",
                       help="omit the wall-clock field for byte-stable output")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITES)
    add_common(p_verify)

    p_table = sub.add_parser("table", help="export a polynomial/operator table")
    p_table.add_argument("kind", choices=TABLE_KINDS)
    add_common(p_table)

    p_krall = sub.add_parser("krall", help="operator synthesis")
    krall_sub = p_krall.add_subparsers(dest="krall_command", required=True)
    p_synth = krall_sub.add_parser("synth")
    add_common(p_synth)
    p_synth.add_argument("--f", default="f2",
                         help="f2, f3, or search (lowest-degree member)")

    p_simplex = sub.add_parser("simplex", help="simplex-layer commands")
    simplex_sub = p_simplex.add_subparsers(dest="simplex_command", required=True)
    p_sv = simplex_sub.add_parser("verify")
    add_common(p_sv)

    p_orth = sub.add_parser("orth", help="orthogonality commands")
    orth_sub = p_orth.add_subparsers(dest="orth_command", required=True)
    p_sob = orth_sub.add_parser("sobolev")
    add_common(p_sob)

    return parser


def _resolve_config(parser, args):
    """Normalize flags into one consistent configuration."""
    gamma = args.gamma
    if gamma is None:
        gamma = [Fraction(1)] + [Fraction(0)] * args.d
    if len(gamma) != args.d + 1:
        parser.error(f"gamma needs d+1 = {args.d + 1} components")
    a = args.a
    if a is None:
        a = [args.a0 if args.a0 is not None else Fraction(1)]
        a += [Fraction(1)] * (args.k - 1)
    if args.a0 is not None:
        a[0] = args.a0
    if len(a) != args.k:
        parser.error(f"need exactly k = {args.k} free constants")
    return gamma, a


def _check_k_beta(parser, args) -> None:
    """k <= beta is a precondition of every transformed-family command."""
    if args.beta.denominator == 1 and args.k > int(args.beta):
        parser.error(f"k = {args.k} exceeds beta = {args.beta}")


def _beta_int(parser, beta: Fraction) -> int:
    if beta.denominator != 1 or beta < 1:
        parser.error(f"this command needs a positive integer beta, got {beta}")
    return int(beta)


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _report_out(report: VerdictReport, args) -> int:
    text = report.to_json(include_timings=not args.no_timings)
    _write_text(args.out, text + "\n" if not text.endswith("\n") else text)
    if args.out is not None:
        print(report.summary())
    return 0 if report.passed else 1


def _poly_coeff_row(p, nmax_deg: int) -> list:
    coeffs = p.coeffs_in("t") if isinstance(p, MPoly) else {}
    out = []
    for j in range(nmax_deg + 1):
        c = coeffs.get(j)
        out.append(rat_str(c.constant_value()) if c is not None else "0")
    return out


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _mpoly_json_str(p: MPoly, vars: tuple) -> str:
    return json.dumps(p.with_vars(vars).to_json(), sort_keys=True,
                      separators=(",", ":"))


def run_table(parser, args) -> int:
    gamma, a = _resolve_config(parser, args)
    kind = args.kind
    fmt = args.format or ("json" if kind == "operators" else "csv")
    nmax = args.nmax
    if kind in ("jacobi", "q", "qhat"):
        params = JacobiParams(args.alpha, args.beta)
        if kind == "jacobi":
            polys = [jacobi_poly(n, params) for n in range(nmax + 1)]
        else:
            _check_k_beta(parser, args)
            beta = _beta_int(parser, args.beta)
            ctx = KrallContext(args.alpha, beta, args.k, a)
            if kind == "q":
                polys = [q_poly(n, ctx.params, ctx.psis) for n in range(nmax + 1)]
            else:
                polys = [qhat_poly(n, 1, ctx.params, ctx.psis)
                         for n in range(nmax + 1)]
        top = max((p.degree() for p in polys if isinstance(p, MPoly)),
                  default=0)
        if fmt == "csv":
            rows = [[str(n)] + _poly_coeff_row(p, top)
                    for n, p in enumerate(polys)]
            text = _csv_text(["n"] + [f"c{j}" for j in range(top + 1)], rows)
        else:
            text = json.dumps([{"n": n, "poly": p.with_vars(("t",)).to_json()}
                               for n, p in enumerate(polys)],
                              sort_keys=True, indent=1)
        _write_text(args.out, text)
        return 0
    if kind in ("simplex", "Q"):
        sp = SimplexParams(args.d, tuple(gamma))
        xvars = tuple(f"x{i}" for i in range(1, args.d + 1))
        if kind == "Q":
            beta = _beta_int(parser, Fraction(str(sp.beta)))
            ctx = KrallContext(sp.alpha, beta, args.k, a)
            entries = [(eta, Q_poly(eta, sp, ctx))
                       for eta in multi_indices(args.d, nmax)]
        else:
            entries = [(eta, simplex_jacobi(eta, sp))
                       for eta in multi_indices(args.d, nmax)]
        if fmt == "csv":
            rows = [[",".join(map(str, eta)), _mpoly_json_str(p, xvars)]
                    for eta, p in entries]
            text = _csv_text(["eta", "poly"], rows)
        else:
            text = json.dumps([{"eta": list(eta),
                                "poly": p.with_vars(xvars).to_json()}
                               for eta, p in entries],
                              sort_keys=True, indent=1)
        _write_text(args.out, text)
        return 0
    if kind == "operators":
        beta = _beta_int(parser, args.beta)
        ctx = KrallContext(args.alpha, beta, args.k, a)
        bundle = {"Bpsi": intertwiner_Bpsi(ctx).to_json()}
        if args.k == 1 and beta == 1:
            f2, f3 = f2_f3_generators(args.alpha, a[0])
            bundle["B_f2"] = synthesize_Bf(f2, ctx).to_json()
            bundle["B_f3"] = synthesize_Bf(
                f3, ctx, certify_extra=10).to_json()
        else:
            from .krall import find_member
            member, _, _ = find_member(ctx)
            bundle["B_searched"] = synthesize_Bf(
                member, ctx, certify_extra=10).to_json()
        text = json.dumps(bundle, sort_keys=True, indent=1)
        _write_text(args.out, text)
        return 0
    if kind == "gram":
        sp = SimplexParams(args.d, tuple(gamma))
        beta = _beta_int(parser, Fraction(str(sp.beta)))
        ctx = KrallContext(sp.alpha, beta, args.k, a)
        etas, matrix = sobolev_gram(sp, ctx, nmax)
        labels = [",".join(map(str, eta)) for eta in etas]
        if fmt == "csv":
            rows = [[labels[i]] + [rat_str(v) for v in matrix[i]]
                    for i in range(len(labels))]
            text = _csv_text(["eta"] + labels, rows)
        else:
            text = json.dumps({"labels": labels,
                               "matrix": [[rat_str(v) for v in row]
                                          for row in matrix]},
                              sort_keys=True, indent=1)
        _write_text(args.out, text)
        return 0
    parser.error(f"unknown table kind {kind}")
    return 2


def run_verify(parser, args) -> int:
    gamma, a = _resolve_config(parser, args)
    suite = args.suite
    if suite == "jacobi":
        report = suites.jacobi_suite(args.alpha, args.beta,
                                     nmax=max(args.nmax, 6))
    elif suite == "krall":
        _check_k_beta(parser, args)
        beta = _beta_int(parser, args.beta)
        report = suites.krall_suite(args.alpha, beta, args.k, a,
                                    max_wordlen=args.wordlen)
    elif suite == "simplex":
        report = suites.simplex_suite(args.d, gamma, args.nmax,
                                      k=args.k, a=a)
    elif suite == "darboux":
        report = suites.darboux_suite(args.d, gamma, args.k, a, args.nmax)
    elif suite == "orth":
        report = suites.orth_suite(args.d, gamma, a[0], args.nmax)
    else:
        report = suites.all_suites(args.d, gamma, args.k, a, args.nmax)
    return _report_out(report, args)


def run_krall_synth(parser, args) -> int:
    gamma, a = _resolve_config(parser, args)
    _check_k_beta(parser, args)
    beta = _beta_int(parser, args.beta)
    ctx = KrallContext(args.alpha, beta, args.k, a)
    if args.f in ("f2", "f3"):
        if not (args.k == 1 and beta == 1):
            parser.error("f2/f3 are the k=1, beta=1 generators")
        f2, f3 = f2_f3_generators(args.alpha, a[0])
        f = f2 if args.f == "f2" else f3
    elif args.f == "search":
        from .krall import find_member
        f, _, _ = find_member(ctx)
    else:
        parser.error(f"unknown f {args.f!r}")
        return 2
    elem = synthesize_Bf(f, ctx, max_wordlen=args.wordlen)
    from .krall import verify_intertwining_1d
    bpsi = intertwiner_Bpsi(ctx)
    residual = verify_intertwining_1d(elem, bpsi, f, ctx)
    out = {
        "f": repr(f),
        "operator": elem.to_json(),
        "intertwiner": bpsi.to_json(),
        "certification": {
            "wordlen": elem.wordlen(),
            "intertwining_residual_zero": residual.is_zero,
        },
    }
    text = json.dumps(out, sort_keys=True, indent=1)
    _write_text(args.out, text)
    return 0 if residual.is_zero else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return run_verify(parser, args)
        if args.command == "table":
            return run_table(parser, args)
        if args.command == "krall":
            return run_krall_synth(parser, args)
        if args.command == "simplex":
            args.suite = "simplex"
            return run_verify(parser, args)
        if args.command == "orth":
            args.suite = "orth"
            return run_verify(parser, args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser.error("no command")
    return 2


if __name__ == "__main__":
    sys.exit(main())

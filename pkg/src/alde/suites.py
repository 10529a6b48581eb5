"""Verification suites: named bundles of exact checks over one configuration.

Each suite returns a VerdictReport whose records are sorted by identity, so
reports are deterministic and diffable.  Independent checks go through a
small work pool capped by the ALDE_THREADS environment variable (default
serial); record assembly is order-independent.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .jacobi import (JacobiParams, jacobi_poly, jacobi_rf, lambda_val,
                     pfaff_check, recover_recurrence, recurrence_coeffs)
from .krall import (KrallContext, algebra_member, f2_f3_generators,
                    find_member, intertwiner_Bpsi, synthesize_Bf,
                    verify_intertwining_1d, verify_weighted_connection)
from .measures import (dirichlet_gram, orth_check_q, orth_check_qhat,
                       verify_sobolev)
from .operators import AlgElem, jacobi_op, rep_1d
from .poly import MPoly, as_ratfn, rat_str
from .report import CheckRecord, VerdictReport
from .simplex import (SimplexParams, basis_rank, dimension_count,
                      verify_commutants, verify_lauricella,
                      verify_multivariable_darboux, verify_simplex_spectra)

T = "t"


def pool_size() -> int:
    try:
        return max(1, int(os.environ.get("ALDE_THREADS", "1")))
    except ValueError:
        return 1


def run_tasks(report: VerdictReport, tasks: Sequence[tuple]):
    """Run (check_id, thunk) tasks, serially or on the capped pool.

    Each thunk returns (passed, residual_str); wall time is recorded in the
    report's separate timing field.
    """
    def run_one(item):
        check_id, params, thunk = item
        start = time.perf_counter()
        passed, residual = thunk()
        elapsed = time.perf_counter() - start
        return CheckRecord(check_id, params, passed, residual), elapsed

    workers = pool_size()
    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_one, tasks))
    else:
        results = [run_one(item) for item in tasks]
    for record, elapsed in results:
        report.add(record, elapsed)
    return report


def _residual_check(residual) -> tuple:
    zero = residual.is_zero if hasattr(residual, "is_zero") else residual == 0
    return bool(zero), "0" if zero else repr(residual)


def jacobi_suite(alpha, beta, nmax: int = 10) -> VerdictReport:
    """Spectral equation, three-term recurrence, and series-reflection checks
    for one parameter pair, n <= nmax, all residuals exact."""
    report = VerdictReport("jacobi", {"alpha": str(alpha), "beta": str(beta),
                                      "nmax": nmax})
    params = JacobiParams(alpha, beta)
    op = jacobi_op(alpha, beta)
    t = MPoly.var(T)
    tasks = []
    for n in range(nmax + 1):
        def spectral(n=n):
            p = as_ratfn(jacobi_poly(n, params))
            lam = lambda_val(n, alpha + beta + 1)
            return _residual_check(op.apply(p) - as_ratfn(lam) * p)
        tasks.append((f"spectral:n={n:02d}", {"n": n}, spectral))

        def recurrence(n=n):
            A, B, C = recurrence_coeffs(n, params)
            pm = as_ratfn(jacobi_poly(n - 1, params))
            p0 = as_ratfn(jacobi_poly(n, params))
            pp = as_ratfn(jacobi_poly(n + 1, params))
            res = as_ratfn(t) * p0 - (A * pp + B * p0 + C * pm)
            sum_rule = B - A - C
            ok1, r1 = _residual_check(res)
            ok2, r2 = _residual_check(sum_rule)
            return ok1 and ok2, r1 if not ok1 else r2
        tasks.append((f"recurrence:n={n:02d}", {"n": n}, recurrence))

        def pfaff(n=n):
            ok = pfaff_check(n, params)
            return ok, "0" if ok else "series forms differ"
        tasks.append((f"pfaff:n={n:02d}", {"n": n}, pfaff))
    return run_tasks(report, tasks).finalize()


def _pick_member(ctx: KrallContext) -> MPoly:
    """A nonconstant algebra member: the printed quadratic in the one-step
    beta = 1 case, otherwise the lowest-degree hit of the search."""
    if ctx.k == 1 and ctx.beta == 1:
        f2, _ = f2_f3_generators(ctx.alpha, ctx.a[0])
        return f2
    member, _, _ = find_member(ctx)
    return member


def krall_suite(alpha, beta: int, k: int, a: Sequence,
                max_wordlen: Optional[int] = None,
                certify_extra: Optional[int] = None) -> VerdictReport:
    """Membership, synthesis, intertwining, and recurrence recovery for one
    transformed family."""
    report = VerdictReport("krall", {"alpha": str(alpha), "beta": beta,
                                     "k": k, "a": [str(x) for x in a]})
    ctx = KrallContext(alpha, beta, k, a)
    report.add(CheckRecord("context:tau-nonzero", {}, True, "0"))
    if k == 1 and beta == 1:
        f2, f3 = f2_f3_generators(alpha, a[0])
        fs = [("f2", f2), ("f3", f3)]
    else:
        member, degree, empty = find_member(ctx)
        report.add(CheckRecord("member-search:found",
                               {"degree": degree, "empty_below": empty},
                               True, "0"))
        fs = [("searched", member)]
    t = MPoly.var(T)
    ok, _ = algebra_member(t, ctx)
    report.add(CheckRecord("member:t-excluded", {}, not ok,
                           "0" if not ok else "degree-1 member found"))
    bpsi = intertwiner_Bpsi(ctx, certify_extra=certify_extra)
    report.add(CheckRecord("intertwiner:synthesized",
                           {"wordlen": bpsi.wordlen()}, True, "0"))
    synthesized = []
    for name, f in fs:
        start = time.perf_counter()
        member, _ = algebra_member(f, ctx)
        report.add(CheckRecord(f"member:{name}", {}, member,
                               "0" if member else "not a member"))
        bf = synthesize_Bf(f, ctx, max_wordlen=max_wordlen,
                           certify_extra=certify_extra)
        synthesized.append(bf)
        residual = verify_intertwining_1d(bf, bpsi, f, ctx)
        report.add(CheckRecord(f"intertwine:{name}",
                               {"wordlen": bf.wordlen()}, residual.is_zero,
                               "0" if residual.is_zero else repr(residual)),
                   time.perf_counter() - start)
    if len(synthesized) == 2:
        b2, b3 = synthesized
        comm = b2 * b3 - b3 * b2
        report.add(CheckRecord("commutativity:[Bf2,Bf3]", {}, comm.is_zero,
                               "0" if comm.is_zero else repr(comm)))
    for s in (1, 2):
        ok = verify_weighted_connection(bpsi, ctx, s, 4)
        report.add(CheckRecord(f"weighted-connection:s={s}", {"s": s}, ok,
                               "0" if ok else "residual nonzero"))
    for n in (1, 2, 3):
        try:
            A, B, C = recover_recurrence(ctx.params, ctx.psis, n)
            qm, q0, qp = ctx.q(n - 1), ctx.q(n), ctx.q(n + 1)
            res = as_ratfn(t) * q0 - (A * qp + B * q0 + C * qm)
            report.add(CheckRecord(f"recurrence-recovery:n={n}", {"n": n},
                                   res.is_zero,
                                   "0" if res.is_zero else repr(res)))
        except Exception as exc:  # degenerate solve is a failed check
            report.add(CheckRecord(f"recurrence-recovery:n={n}", {"n": n},
                                   False, f"solve failed: {exc}"))
    return report.finalize()


def simplex_suite(d: int, gamma: Sequence, nmax: int,
                  k: Optional[int] = None,
                  a: Optional[Sequence] = None) -> VerdictReport:
    """Spectra, Lauricella cross-check, commutators, and (when a transformed
    family is configured) the basis rank of the Q polynomials."""
    sp = SimplexParams(d, tuple(gamma))
    report = VerdictReport("simplex", {"d": d,
                                       "gamma": [str(g) for g in gamma],
                                       "nmax": nmax})
    report.extend(verify_simplex_spectra(sp, nmax))
    report.extend(verify_lauricella(sp, min(nmax, 3)))
    bf = None
    ctx = None
    if k is not None and a is not None:
        ctx = KrallContext(sp.alpha, int(Fraction(str(sp.beta))), k, a)
        f = _pick_member(ctx)
        bf = synthesize_Bf(f, ctx)
    report.extend(verify_commutants(sp, bf))
    if ctx is not None:
        rk, count = basis_rank(sp, ctx, nmax)
        expected = sum(dimension_count(d, n) for n in range(nmax + 1))
        ok = rk == count == expected
        report.add(CheckRecord("basis:rank", {"rank": rk, "count": count,
                                              "expected": expected}, ok,
                               "0" if ok else f"rank {rk} != {expected}"))
    return report.finalize()


def darboux_suite(d: int, gamma: Sequence, k: int, a: Sequence,
                  nmax: int) -> VerdictReport:
    """The multivariable Darboux checks at one configuration."""
    sp = SimplexParams(d, tuple(gamma))
    ctx = KrallContext(sp.alpha, int(Fraction(str(sp.beta))), k, a)
    f = _pick_member(ctx)
    return verify_multivariable_darboux(sp, ctx, f, nmax)


def orth_suite(d: int, gamma: Sequence, a0, nmax: int,
               n_pairs: int = 6) -> VerdictReport:
    """Bulk+point orthogonality of the one-variable transformed family, the
    mixed-form orthogonality of the Q family, and the classical Dirichlet
    Gram diagonality."""
    sp = SimplexParams(d, tuple(gamma))
    report = VerdictReport("orth", {"d": d, "gamma": [str(g) for g in gamma],
                                    "a0": str(a0), "nmax": nmax})
    ctx = KrallContext(sp.alpha, 1, 1, [a0])
    tasks = []
    for n in range(n_pairs):
        for m in range(n + 1, n_pairs):
            def check_q(n=n, m=m):
                return _residual_check(orth_check_q(ctx, n, m))
            tasks.append((f"orth-q:n={n}:m={m}", {"n": n, "m": m}, check_q))
    for s in (1, 2):
        for n in range(n_pairs - 2):
            for m in range(n + 1, n_pairs - 2):
                def check_qh(s=s, n=n, m=m):
                    return _residual_check(orth_check_qhat(ctx, s, n, m))
                tasks.append((f"orth-qhat:s={s}:n={n}:m={m}",
                              {"s": s, "n": n, "m": m}, check_qh))
    run_tasks(report, tasks)
    for n in range(n_pairs):
        norm = orth_check_q(ctx, n, n)
        report.add(CheckRecord(f"norm-positive:n={n}", {"n": n}, norm > 0,
                               str(norm)))
    report.extend(verify_sobolev(sp, ctx, min(nmax, 4)))
    etas, gram = dirichlet_gram(sp, min(nmax, 3))
    off_ok = all(gram[i][j] == 0 for i in range(len(etas))
                 for j in range(len(etas)) if i != j)
    diag_ok = all(gram[i][i] != 0 for i in range(len(etas)))
    report.add(CheckRecord("dirichlet-gram:diagonal", {"nmax": min(nmax, 3)},
                           off_ok and diag_ok,
                           "0" if off_ok and diag_ok else "gram not diagonal"))
    return report.finalize()


def all_suites(d: int, gamma: Sequence, k: int, a: Sequence,
               nmax: int) -> VerdictReport:
    """Every suite on one configuration (the gamma grid fixes alpha, beta)."""
    sp = SimplexParams(d, tuple(gamma))
    beta_int = int(Fraction(str(sp.beta)))
    report = VerdictReport("all", {"d": d, "gamma": [str(g) for g in gamma],
                                   "k": k, "a": [str(x) for x in a],
                                   "nmax": nmax})
    for sub in (
            jacobi_suite(sp.alpha, sp.beta, nmax=min(nmax + 4, 8)),
            krall_suite(sp.alpha, beta_int, k, a),
            simplex_suite(d, gamma, nmax, k=k, a=a),
            darboux_suite(d, gamma, k, a, nmax),
            orth_suite(d, gamma, a[0], nmax) if Fraction(str(sp.beta)) == 1
            else VerdictReport("orth", {"skipped": "gamma_1 != 1"}),
    ):
        for rec in sub.records:
            report.add(CheckRecord(f"{sub.suite}:{rec.check_id}", rec.params,
                                   rec.passed, rec.residual),
                       sub.timings.get(rec.check_id))
    return report.finalize()

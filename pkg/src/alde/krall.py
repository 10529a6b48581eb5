"""Commutative operator algebras attached to a Wronskian-transformed family.

Given a family psi of k lowering-chain sequences, the polynomials f whose
eigenvalue increments are divisible by the shifted Wronskian tau form an
algebra; each member f has a unique operator B_f in R<G1,G2> that acts
diagonally on the transformed polynomials q_n, and one intertwiner Bpsi maps
the parameter-shifted classical family onto q_n.

Both operators are synthesized the same way: a degree-graded ansatz over the
normal-form monomials G1^a G2^b is matched against the defining equations for
enough indices n by an exact linear solve, with the solution certified on a
fresh batch of indices afterwards.  Everything is exact; a synthesis that
survives certification is a proof of the identity on the tested range, and
the operator-level identities are then checked by coefficient comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence

from .jacobi import JacobiParams, jacobi_rf, lambda_val, q_poly, qhat_poly
from .linalg import LinearSolveError, residual_ok, solve_exact, nullspace
from .operators import (AlgElem, DiffOp, d1_op, d2_op, d2s_op, f_of_diffop,
                        jacobi_op, rep_1d)
from .poly import MPoly, RatFn, as_ratfn, ratfn, scalar_is_zero
from .sequences import SignedSeq, is_lambda_polynomial, psi_family, tau_poly

T = "t"
N = "n"


class SynthesisError(RuntimeError):
    """No operator of admissible word length satisfies the equations."""


class KrallContext:
    """Parameters, kernel sequences, and cached transformed polynomials."""

    def __init__(self, alpha, beta: int, k: int, a: Sequence,
                 check_range: int = 48):
        if not isinstance(beta, int) or beta < 1:
            raise ValueError("beta must be a positive integer")
        if not 1 <= k <= beta:
            raise ValueError(f"need 1 <= k <= beta, got k={k} beta={beta}")
        if len(a) != k:
            raise ValueError("need exactly k free constants")
        self.alpha = alpha
        self.beta = beta
        self.k = k
        self.a = list(a)
        self.params = JacobiParams(alpha, Fraction(beta))
        self.sigma = alpha + beta
        self.psis = psi_family(k, alpha, beta, a)
        for seq in self.psis:
            if not is_lambda_polynomial(seq, self.sigma + 1):
                raise ValueError("kernel sequence is not a lambda-polynomial")
        self.tau = tau_poly(self.psis)
        self._q: dict = {}
        self._qhat: dict = {}
        self.check_range = check_range
        for m in range(-1, check_range + 1):
            if self.tau.substitute({N: Fraction(m)}).is_zero:
                raise ValueError(f"tau vanishes at n={m}: degenerate family")

    def q(self, n: int):
        if n not in self._q:
            self._q[n] = as_ratfn(q_poly(n, self.params, self.psis))
        return self._q[n]

    def qhat(self, n: int, s: int):
        if (n, s) not in self._qhat:
            self._qhat[(n, s)] = as_ratfn(
                qhat_poly(n, s, self.params, self.psis))
        return self._qhat[(n, s)]


def algebra_member(f: MPoly, ctx: KrallContext):
    """Membership test with the quotient witness.

    f (a polynomial in t, coefficients may carry the free parameters) belongs
    iff f(lambda_{n-k/2}) - f(lambda_{n-k/2-1}) is exactly divisible by
    tau_{n-1} as a polynomial in n.  Returns (bool, quotient or None).
    """
    n = MPoly.var(N)
    half = Fraction(ctx.k, 2)
    lam1 = lambda_val(n - half, ctx.sigma + 1)
    lam0 = lambda_val(n - half - 1, ctx.sigma + 1)
    delta = as_ratfn(f.substitute({T: lam1})) - as_ratfn(f.substitute({T: lam0}))
    tau_shift = ctx.tau.substitute({N: n - 1})
    from .poly import divmod_in
    quot, rem = divmod_in(delta, tau_shift, N)
    if rem.is_zero:
        return True, quot
    return False, None


def member_search(ctx: KrallContext, max_degree: int) -> list:
    """Basis of nonconstant members with degree <= max_degree (rational
    parameters only).  Constants are members trivially and are excluded."""
    n = MPoly.var(N)
    half = Fraction(ctx.k, 2)
    lam1 = lambda_val(n - half, ctx.sigma + 1)
    lam0 = lambda_val(n - half - 1, ctx.sigma + 1)
    tau_shift = ctx.tau.substitute({N: n - 1})
    from .poly import divmod_in
    remainders = []
    for i in range(1, max_degree + 1):
        delta = as_ratfn(lam1) ** i - as_ratfn(lam0) ** i
        _, rem = divmod_in(delta, tau_shift, N)
        remainders.append(rem)
    degs = set()
    rows_by_power = []
    for rem in remainders:
        coeffs = rem.coeffs_in(N)
        rows_by_power.append(coeffs)
        degs |= set(coeffs)
    rows = []
    for j in sorted(degs):
        row = []
        for coeffs in rows_by_power:
            c = coeffs.get(j)
            if c is None:
                row.append(Fraction(0))
            else:
                if c.den != 1 or not c.num.is_constant():
                    raise ValueError("member search needs rational parameters")
                row.append(c.num.constant_value())
        rows.append(row)
    t = MPoly.var(T)
    members = []
    for vec in nullspace(rows, max_degree):
        f = MPoly.zero((T,))
        scale = 1
        for c in vec:
            scale = scale * c.denominator // _gcd(scale, c.denominator)
        for i, c in enumerate(vec, start=1):
            f = f + (c * scale) * t ** i
        members.append(f)
    return members


def _gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


def find_member(ctx: KrallContext, start_degree: int = 3,
                max_degree: Optional[int] = None):
    """Lowest-degree nonconstant member, extending the search upward.

    Returns (member, searched_degree, empty_below) where empty_below lists
    the degrees whose search came back empty; raises when max_degree is
    exhausted.  For generic data the lowest degree is sum_j (2 beta + 2j)/2
    rounded into the Wronskian structure, e.g. 2 for the one-step beta = 1
    family and 5 for the two-step beta = 2 one.
    """
    cap = max_degree if max_degree is not None else \
        2 * ctx.k * ctx.beta + ctx.k * (ctx.k - 1)
    empty = []
    for degree in range(start_degree, cap + 1):
        members = member_search(ctx, degree)
        if members:
            best = min(members, key=lambda f: f.degree_in(T))
            return best, degree, empty
        empty.append(degree)
    raise ValueError(f"no nonconstant member up to degree {cap}")


def f2_f3_generators(alpha, a0):
    """The two generators of the k=1, beta=1 algebra, exact coefficients."""
    t = MPoly.var(T)
    f2 = t ** 2 - Fraction(1, 2) * (3 + 4 * a0 + 4 * alpha + 4 * a0 * alpha) * t
    f3 = (t ** 3
          - Fraction(1, 4) * (1 + 6 * a0 + 6 * alpha + 6 * a0 * alpha) * t ** 2
          - Fraction(1, 16) * (21 + 12 * a0 + 28 * alpha + 12 * a0 * alpha
                               + 4 * alpha ** 2) * t)
    return f2, f3


def c_factor(n: int, k: int, sigma):
    """Connection scalar between q_n and the beta-shifted classical family."""
    sign = -1 if (n * k) % 2 else 1
    if k % 4 in (0, 3):
        return Fraction(sign)
    return sign * (2 * n + sigma - k + 1)


def chat_factor(n: int, k: int, s: int, sigma):
    """Weight-s connection scalar: c_{n+s,k} times the Pochhammer ratio."""
    out = as_ratfn(c_factor(n + s, k, sigma))
    for j in range(k):
        den = sigma + 2 * s - j
        if scalar_is_zero(den):
            raise ValueError(f"vanishing factor sigma+2s-{j}")
        out = out * as_ratfn(sigma - j) / as_ratfn(den)
    return out


def _apply_basis(op1: DiffOp, op2: DiffOp, u: RatFn, basis) -> dict:
    """op1^a op2^b [u] for every (a,b) in the ansatz basis, iteratively."""
    out = {}
    maxb = max(b for _, b in basis)
    by_b = {0: u}
    for b in range(1, maxb + 1):
        by_b[b] = op2.apply(by_b[b - 1])
    for a, b in sorted(basis):
        if a == 0:
            out[(0, b)] = by_b[b]
        else:
            out[(a, b)] = op1.apply(out[(a - 1, b)])
    return out


def solve_operator_relation(pair_fn: Callable, op1: DiffOp, op2: DiffOp, *,
                            k: int = 0, wordlen_start: int = 2,
                            wordlen_max: int = 8,
                            certify_extra: Optional[int] = None,
                            label: str = "operator") -> AlgElem:
    """Find B in R<G1,G2> with rep(B)[u_n] = v_n for all n.

    pair_fn(n) yields the polynomial pair (u_n, v_n).  The ansatz runs over
    normal-form monomials G1^a G2^b with a + 2b <= wordlen; the number of
    solve indices is (#unknowns + k + 2) to overdetermine the system, and the
    solution is certified on twice that many fresh indices afterwards.
    """
    from .operators import _rep
    zero = as_ratfn(0)
    for wordlen in range(wordlen_start, wordlen_max + 1):
        basis = [(a, b) for b in range(wordlen // 2 + 1)
                 for a in range(wordlen - 2 * b + 1)]
        ndet = len(basis) + k + 2
        rows, rhs = [], []
        for n in range(ndet):
            u, v = pair_fn(n)
            applied = _apply_basis(op1, op2, as_ratfn(u), basis)
            cols = [applied[key].coeffs_in(T) for key in basis]
            vc = as_ratfn(v).coeffs_in(T)
            degs = set(vc)
            for c in cols:
                degs |= set(c)
            for j in sorted(degs):
                rows.append([c.get(j, zero) for c in cols])
                rhs.append(vc.get(j, zero))
        try:
            sol = solve_exact(rows, rhs)
        except LinearSolveError:
            continue
        if not residual_ok(rows, rhs, sol):
            continue
        elem = AlgElem.from_terms(dict(zip(basis, sol)))
        rep = _rep(elem, op1, op2)
        extra = 2 * ndet if certify_extra is None else certify_extra
        certified = True
        for n in range(ndet, ndet + extra):
            u, v = pair_fn(n)
            if not (rep.apply(as_ratfn(u)) - as_ratfn(v)).is_zero:
                certified = False
                break
        if certified:
            return elem
    raise SynthesisError(
        f"no {label} with word length <= {wordlen_max} satisfies the equations")


def synthesize_Bf(f: MPoly, ctx: KrallContext,
                  max_wordlen: Optional[int] = None,
                  certify_extra: Optional[int] = None) -> AlgElem:
    """Operator acting on q_n with eigenvalue f(lambda_{n-k/2}).

    Requires algebra membership; the search begins at word length 2 deg f
    (the order the algebra structure suggests) and grows to max_wordlen.
    """
    member, _ = algebra_member(f, ctx)
    if not member:
        raise ValueError("f is not a member of the eigenvalue algebra")
    deg = f.degree_in(T)
    start = 2 * deg
    wmax = max_wordlen if max_wordlen is not None else 2 * deg + 2
    half = Fraction(ctx.k, 2)

    def pair(n):
        u = ctx.q(n)
        lam = lambda_val(Fraction(n) - half, ctx.sigma + 1)
        fval = f.substitute({T: lam})
        return u, as_ratfn(fval) * u

    return solve_operator_relation(
        pair, d1_op(), d2_op(ctx.alpha), k=ctx.k, wordlen_start=start,
        wordlen_max=wmax, certify_extra=certify_extra,
        label=f"eigenvalue operator (deg f = {deg})")


def intertwiner_Bpsi(ctx: KrallContext, max_wordlen: Optional[int] = None,
                     certify_extra: Optional[int] = None) -> AlgElem:
    """The operator carrying p_n^{alpha,beta-k} onto q_n/c_{n,k}.

    The Wronskian expansion of q_n over the shifted classical family has
    index-polynomial coefficients of degree sum_j (2 beta + 2j), which is the
    operator order; the ansatz starts there (coefficients of any unused
    higher monomials solve to zero, the solution being unique).
    """
    bound = 2 * ctx.k * ctx.beta + ctx.k * (ctx.k - 1)
    wmax = max_wordlen if max_wordlen is not None else bound + 2

    def pair(n):
        u = jacobi_rf(n, ctx.alpha, ctx.beta - ctx.k)
        c = c_factor(n, ctx.k, ctx.sigma)
        return u, ctx.q(n) / as_ratfn(c)

    return solve_operator_relation(
        pair, d1_op(), d2_op(ctx.alpha), k=ctx.k,
        wordlen_start=min(bound, wmax), wordlen_max=wmax,
        certify_extra=certify_extra, label="intertwiner")


def verify_intertwining_1d(Bf: AlgElem, Bpsi: AlgElem, f: MPoly,
                           ctx: KrallContext) -> DiffOp:
    """Residual of the Darboux intertwining relation, as an operator.

    Composes rep(Bf) o rep(Bpsi) against rep(Bpsi) o f(M + shift) where M is
    the hypergeometric operator at beta-k and the shift is
    lambda_{k/2}^{-sigma-1}; the result is the zero operator when the
    relation holds.
    """
    alpha = ctx.alpha
    lhs = rep_1d(Bf, alpha).compose(rep_1d(Bpsi, alpha))
    shift = lambda_val(Fraction(ctx.k, 2), -(ctx.sigma + 1))
    inner = f_of_diffop(f, jacobi_op(alpha, ctx.beta - ctx.k), shift, var=T)
    rhs = rep_1d(Bpsi, alpha).compose(inner)
    return lhs - rhs


def verify_weighted_connection(Bpsi: AlgElem, ctx: KrallContext, s: int,
                               nmax: int) -> bool:
    """Check the weight-s connection: for n <= nmax,

        qhat_{n,s} (1-t)^s = chat_{n,k,s} rep_s(Bpsi)[p_n^{alpha+2s,beta-k} (1-t)^s].
    """
    from .operators import _rep
    t = MPoly.var(T)
    w = as_ratfn((1 - t) ** s)
    rep = _rep(Bpsi, d1_op(), d2s_op(ctx.alpha, s))
    for n in range(nmax + 1):
        u = jacobi_rf(n, ctx.alpha + 2 * s, ctx.beta - ctx.k) * w
        lhs = ctx.qhat(n, s) * w
        rhs = chat_factor(n, ctx.k, s, ctx.sigma) * rep.apply(u)
        if not (lhs - rhs).is_zero:
            return False
    return True

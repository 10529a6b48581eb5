"""Sequences of the form (-1)^n p(n): the phi/psi families and discrete Wronskians.

A ``SignedSeq`` stores only the polynomial body p, never tabulated values, so
evaluation is total at every integer index, negative ones included (the
Wronskians at small n reference indices below zero).  The body may carry free
parameters; its denominator is then a polynomial in the parameters alone.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from .linalg import det
from .poly import MPoly, RatFn, as_ratfn, divmod_in, pochhammer, scalar_is_zero

N = "n"


class SignedSeq:
    """The sequence n -> (-1)^n * body(n)."""

    __slots__ = ("body",)

    def __init__(self, body):
        body = as_ratfn(body)
        if body.den.degree_in(N) > 0:
            raise ValueError("sequence body must be polynomial in n")
        self.body = body

    def body_at(self, m) -> RatFn:
        """body(m); m may be an integer or a symbolic shift expression."""
        return self.body.substitute({N: _shift_value(m)})

    def value(self, m: int) -> RatFn:
        """The signed value (-1)^m body(m) at an integer index."""
        v = self.body_at(m)
        return -v if m % 2 else v

    def index_shifted(self, d: int) -> "SignedSeq":
        """The sequence m -> value(m + d), again in (-1)^n p(n) form."""
        nn = MPoly.var(N)
        b = self.body.substitute({N: nn + d})
        return SignedSeq(-b if d % 2 else b)

    def __eq__(self, other):
        return isinstance(other, SignedSeq) and self.body == other.body

    def __hash__(self):
        return hash(self.body)

    def __repr__(self):
        return f"SignedSeq({self.body!r})"


def _shift_value(m):
    if isinstance(m, (int, Fraction)):
        return Fraction(m)
    return m


def phi_seq(branch: int, j: int, alpha, beta: int) -> SignedSeq:
    """The two ladder families feeding the Darboux kernel basis.

    branch 1: (n+1)_j (-n-alpha-beta)_j / (j! (1-beta)_j), defined for j < beta;
    branch 2: (n+1)_beta (n+alpha+1)_beta (-n)_j (n+alpha+beta+1)_j
              / (j! beta! (1+beta)_j (1+alpha)_beta).
    Both satisfy the lowering chain of the extended recurrence operator.
    """
    if not isinstance(beta, int) or beta < 1:
        raise ValueError("beta must be a positive integer")
    if j < 0:
        raise ValueError("j must be nonnegative")
    n = MPoly.var(N)
    if branch == 1:
        if j >= beta:
            raise ValueError(f"branch-1 index j={j} requires j < beta={beta}")
        den = factorial(j) * pochhammer(Fraction(1 - beta), j)
        body = pochhammer(n + 1, j) * pochhammer(-n - alpha - beta, j) / den
    elif branch == 2:
        den = (factorial(j) * factorial(beta) * pochhammer(Fraction(1 + beta), j)
               * pochhammer(alpha + 1, beta))
        if scalar_is_zero(den):
            raise ValueError("vanishing denominator factor (1+alpha)_beta")
        body = (pochhammer(n + 1, beta) * pochhammer(n + alpha + 1, beta)
                * pochhammer(-n, j) * pochhammer(n + alpha + beta + 1, j)) / den
    else:
        raise ValueError("branch must be 1 or 2")
    return SignedSeq(body)


def psi_seq(j: int, alpha, beta: int, a: Sequence) -> SignedSeq:
    """Kernel-basis member: phi^{2,j} + sum_{l<=j} a_{j-l} phi^{1,l}."""
    if j > len(a) - 1:
        raise ValueError("need j+1 free constants a_0..a_j")
    body = phi_seq(2, j, alpha, beta).body
    for l in range(j + 1):
        body = body + as_ratfn(a[j - l]) * phi_seq(1, l, alpha, beta).body
    return SignedSeq(body)


def psi_family(k: int, alpha, beta: int, a: Sequence) -> list:
    """The k sequences psi^(0), ..., psi^(k-1) for constants a_0..a_{k-1}."""
    if len(a) != k:
        raise ValueError("need exactly k constants")
    if k > beta:
        raise ValueError(f"k={k} exceeds beta={beta}")
    return [psi_seq(j, alpha, beta, a) for j in range(k)]


def is_lambda_polynomial(seq: SignedSeq, sigma) -> bool:
    """True iff the body lies in R[lambda] for lambda = -n(n+sigma).

    Decided by rewriting in the basis {lambda^m} via repeated exact
    division: every division digit must be free of n.
    """
    n = MPoly.var(N)
    lam = as_ratfn(-n * (n + sigma))
    b = seq.body
    while b.num.degree_in(N) > 0:
        q, r = divmod_in(b, lam, N)
        if r.num.degree_in(N) > 0:
            return False
        b = q
    return True


def tau_poly(psis: Sequence[SignedSeq], shift: int = 0) -> RatFn:
    """Discrete Wronskian of the sign-stripped bodies, symbolic in n.

    Entry (i, j) is body_i(n + shift - j + 1) for 1 <= i, j <= k; the empty
    Wronskian (k = 0) is 1.
    """
    k = len(psis)
    n = MPoly.var(N)
    rows = []
    for seq in psis:
        rows.append([seq.body.substitute({N: n + (shift - j)})
                     for j in range(k)])
    return as_ratfn(det(rows))

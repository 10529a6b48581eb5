"""Classical Jacobi polynomials, their bispectral data, and the
Wronskian-transformed families q_n and qhat_{n,s}.

The normalization is the terminating-series one:

    p_n(t) = (-1)^n (a+b+1)_n (b+1)_n / (n! (a+1)_n)
             * sum_k (-n)_k (n+a+b+1)_k / (k! (b+1)_k) t^k

with parameters (a, b) = (alpha, beta), orthogonal on [0,1] against
(1-t)^alpha t^beta.  Parameters may be rational numbers or free symbols;
identities then hold in the rational-function field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .linalg import LinearSolveError, det, residual_ok, solve_exact
from .poly import (MPoly, RatFn, as_ratfn, pochhammer, ratfn,
                   scalar_is_zero)
from .sequences import SignedSeq

T = "t"


@dataclass(frozen=True)
class JacobiParams:
    """Parameter pair (alpha, beta); beta is a positive integer in the
    Darboux layers, arbitrary here."""
    alpha: object
    beta: object

    @property
    def sigma(self):
        return self.alpha + self.beta


_jac_cache: dict = {}


def _as_key(x):
    return x if isinstance(x, (int, Fraction)) else x


def jacobi_rf(n: int, alpha, beta) -> RatFn:
    """p_n as a RatFn in t (parameters may be symbolic)."""
    if n < 0:
        return as_ratfn(MPoly.zero((T,)))
    key = (n, _as_key(alpha), _as_key(beta))
    hit = _jac_cache.get(key)
    if hit is not None:
        return hit
    t = MPoly.var(T)
    sigma = alpha + beta
    den = pochhammer(alpha + 1, n)
    if scalar_is_zero(den):
        raise ValueError(f"(alpha+1)_{n} vanishes for alpha={alpha!r}")
    pref = as_ratfn(pochhammer(sigma + 1, n)) * pochhammer(beta + 1, n) \
        / (factorial(n) * as_ratfn(den))
    if n % 2:
        pref = -pref
    acc = as_ratfn(0)
    term = as_ratfn(1)
    for k in range(n + 1):
        if k:
            factor_den = k * (beta + k)
            if scalar_is_zero(factor_den):
                raise ValueError(f"(beta+1)_{k} vanishes for beta={beta!r}")
            term = term * as_ratfn((-n + k - 1) * (n + sigma + k)) / factor_den
        acc = acc + term * t ** k
    out = pref * acc
    _jac_cache[key] = out
    return out


def jacobi_poly(n: int, params: JacobiParams):
    """Degree-n Jacobi polynomial; an MPoly for rational parameters."""
    rf = jacobi_rf(n, params.alpha, params.beta)
    return rf.as_poly() if rf.den == 1 else rf


def pfaff_form(n: int, params: JacobiParams):
    """The same polynomial from the reflected series in 1-t."""
    if n < 0:
        return as_ratfn(MPoly.zero((T,)))
    alpha, beta = params.alpha, params.beta
    sigma = alpha + beta
    u = 1 - MPoly.var(T)
    pref = as_ratfn(pochhammer(sigma + 1, n)) / factorial(n)
    acc = as_ratfn(0)
    term = as_ratfn(1)
    for k in range(n + 1):
        if k:
            factor_den = k * (alpha + k)
            if scalar_is_zero(factor_den):
                raise ValueError(f"(alpha+1)_{k} vanishes for alpha={alpha!r}")
            term = term * as_ratfn((-n + k - 1) * (n + sigma + k)) / factor_den
        acc = acc + term * u ** k
    rf = pref * acc
    return rf.as_poly() if rf.den == 1 else rf


def pfaff_check(n: int, params: JacobiParams) -> bool:
    """True iff the two series forms agree exactly."""
    return as_ratfn(jacobi_poly(n, params)) == as_ratfn(pfaff_form(n, params))


def recurrence_coeffs(n: int, params: JacobiParams):
    """Triple (A, B, C) of the three-term recurrence t p_n = A p_{n+1} + B p_n + C p_{n-1}.

    C_0 uses the cancelled form beta/(alpha+beta+1): the raw quotient is 0/0
    at n = 0 when alpha+beta = 0, and the cancelled value is what makes the
    n = 0 recurrence and B = A + C both exact.
    """
    alpha, beta = params.alpha, params.beta
    sigma = alpha + beta
    for d in (2 * n + sigma + 1, 2 * n + sigma + 2):
        if scalar_is_zero(d):
            raise ValueError(f"recurrence denominator vanishes at n={n}")
    A = as_ratfn((n + 1) * (n + alpha + 1)) \
        / as_ratfn((2 * n + sigma + 1) * (2 * n + sigma + 2))
    if n == 0:
        C = as_ratfn(beta) / as_ratfn(sigma + 1)
    else:
        if scalar_is_zero(2 * n + sigma):
            raise ValueError(f"recurrence denominator vanishes at n={n}")
        C = as_ratfn((n + beta) * (n + sigma)) \
            / as_ratfn((2 * n + sigma) * (2 * n + sigma + 1))
    return A, A + C, C


def recurrence_ratfns(alpha, beta, var: str = "n"):
    """(A, B, C) as rational functions of a symbolic index variable."""
    nu = MPoly.var(var)
    sigma = alpha + beta
    A = ratfn((nu + 1) * (nu + alpha + 1),
              (2 * nu + sigma + 1) * (2 * nu + sigma + 2))
    C = ratfn((nu + beta) * (nu + sigma), (2 * nu + sigma) * (2 * nu + sigma + 1))
    return A, A + C, C


def lambda_val(n, xi):
    """The eigenvalue -n(n+xi); n may be a half-integer or symbolic."""
    if isinstance(n, int):
        n = Fraction(n)
    return -n * (n + xi)


def laid_residual(n, k, sigma):
    """lambda_{n-k/2}^{sigma+1} - lambda_n^{sigma-k+1} - lambda_{k/2}^{-sigma-1}.

    Identically zero; exposed so the shift identity is a checked equality.
    """
    half = Fraction(k, 2) if isinstance(k, int) else k / 2
    return (lambda_val(n - half, sigma + 1) - lambda_val(n, sigma - k + 1)
            - lambda_val(half, -sigma - 1))


def q_poly(n: int, params: JacobiParams, psis: Sequence[SignedSeq]):
    """Wronskian extension of p_n: det of the (k+1) x (k+1) shifted array.

    Rows are the k signed sequences and the Jacobi row; column j holds index
    n-j+1.  Jacobi values at negative index are zero; the empty family
    (k = 0) degenerates to p_n itself.
    """
    k = len(psis)
    if k == 0:
        return jacobi_poly(n, params)
    rows = []
    for seq in psis:
        rows.append([seq.value(n - j) for j in range(k + 1)])
    rows.append([jacobi_rf(n - j, params.alpha, params.beta)
                 for j in range(k + 1)])
    rf = as_ratfn(det(rows))
    return rf.as_poly() if rf.den == 1 else rf


def qhat_poly(n: int, s: int, params: JacobiParams, psis: Sequence[SignedSeq]):
    """Weight-s variant: sequences shifted by s against p_n^{alpha+2s,beta}."""
    k = len(psis)
    up = JacobiParams(params.alpha + 2 * s, params.beta)
    if k == 0:
        return jacobi_poly(n, up)
    rows = []
    for seq in psis:
        rows.append([seq.value(n + s - j) for j in range(k + 1)])
    rows.append([jacobi_rf(n - j, up.alpha, up.beta) for j in range(k + 1)])
    rf = as_ratfn(det(rows))
    return rf.as_poly() if rf.den == 1 else rf


def recover_recurrence(params: JacobiParams, psis: Sequence[SignedSeq], n: int):
    """Exact (A, B, C) with t q_n = A q_{n+1} + B q_n + C q_{n-1}.

    Solvability certifies that the transformed family still satisfies a
    second-order recurrence; a singular solve signals tau-degeneracy.
    """
    qm = as_ratfn(q_poly(n - 1, params, psis))
    q0 = as_ratfn(q_poly(n, params, psis))
    qp = as_ratfn(q_poly(n + 1, params, psis))
    t = MPoly.var(T)
    target = as_ratfn(t) * q0
    degrees = range(n + 2)
    tc = target.coeffs_in(T)
    cols = [qp.coeffs_in(T), q0.coeffs_in(T), qm.coeffs_in(T)]
    zero = as_ratfn(0)
    rows = [[col.get(j, zero) for col in cols] for j in degrees]
    rhs = [tc.get(j, zero) for j in degrees]
    A, B, C = solve_exact(rows, rhs)
    if not residual_ok(rows, rhs, (A, B, C)):
        raise LinearSolveError("inconsistent")
    return A, B, C

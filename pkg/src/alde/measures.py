"""Exact moment functionals for the beta and Dirichlet weights, inner
products, and the orthogonality verdicts, including the mixed
bulk/boundary/operator inner product of the transformed family.

Unnormalized integrals of different weights are kept apart by a scale tag:
a MomentValue is a rational multiple of one universal constant and values
with different tags never add.  Ratios of gamma-function products are
resolved by Pochhammer algebra alone (``gamma_quotient``), so every verdict
stays inside exact rational arithmetic; in particular the bulk and boundary
base constants of the mixed inner product have the exact ratio
1/(alpha+1), which the engine computes rather than assumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .jacobi import lambda_val
from .krall import KrallContext
from .operators import simplex_op
from .poly import MPoly, as_mpoly, as_ratfn, pochhammer
from .report import CheckRecord, VerdictReport
from .simplex import Q_poly, SimplexParams, multi_indices, simplex_jacobi

T = "t"

UNIT = "unit"
CPRIME = "cprime"


@dataclass(frozen=True)
class MomentValue:
    """A rational multiple of one universal scale constant."""
    rational: Fraction
    tag: str = UNIT

    def _check(self, other: "MomentValue"):
        if self.tag != other.tag and self.rational and other.rational:
            raise ValueError(f"cannot combine scales {self.tag!r} and {other.tag!r}")

    def __add__(self, other):
        if isinstance(other, MomentValue):
            self._check(other)
            tag = self.tag if self.rational else other.tag
            return MomentValue(self.rational + other.rational, tag)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, MomentValue):
            return self + MomentValue(-other.rational, other.tag)
        return NotImplemented

    def scaled(self, c) -> "MomentValue":
        return MomentValue(self.rational * Fraction(c), self.tag)

    @property
    def is_zero(self) -> bool:
        return self.rational == 0

    def __eq__(self, other):
        if isinstance(other, MomentValue):
            if self.rational == 0 and other.rational == 0:
                return True
            return self.tag == other.tag and self.rational == other.rational
        if isinstance(other, (int, Fraction)):
            return self.tag == UNIT and self.rational == other
        return NotImplemented

    def __repr__(self):
        if self.tag == UNIT:
            return str(self.rational)
        return f"{self.rational}*[{self.tag}]"


def gamma_quotient(nums: Sequence[Fraction], dens: Sequence[Fraction]):
    """prod Gamma(n_i) / prod Gamma(d_j) resolved by Pochhammer shifts.

    Arguments are matched in pairs differing by an integer; the quotient is
    then a finite product of rising factorials.  Returns None when some
    argument cannot be matched (the ratio is then not rational).
    """
    nums = [Fraction(x) for x in nums]
    dens = [Fraction(x) for x in dens]
    out = Fraction(1)
    remaining = list(dens)
    for x in nums:
        match = None
        for y in remaining:
            if (x - y).denominator == 1:
                match = y
                break
        if match is None:
            return None
        remaining.remove(match)
        m = int(x - match)
        if m >= 0:
            out *= pochhammer(match, m)
        else:
            p = pochhammer(x, -m)
            if p == 0:
                return None
            out /= p
    if remaining:
        return None
    return out


def beta_moment(m: int, alpha, beta, normalized: bool = True):
    """Moment of t^m for the weight (1-t)^alpha t^beta on [0, 1].

    Normalized: (beta+1)_m / (alpha+beta+2)_m.  Unnormalized values are the
    same ratio times the base integral; when the base is itself rational
    (integer beta, e.g. the plain случае beta = 0 giving m!/(alpha+1)_{m+1})
    a Fraction comes back, otherwise a tagged MomentValue.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha <= -1 or beta <= -1:
        raise ValueError("weight exponents must exceed -1")
    ratio = pochhammer(beta + 1, m) / pochhammer(alpha + beta + 2, m)
    if normalized:
        return ratio
    base = gamma_quotient([beta + 1, alpha + 1], [alpha + beta + 2, Fraction(1)])
    if base is not None:
        return ratio * base
    return MomentValue(ratio, f"beta-base:{alpha},{beta}")


def dirichlet_moment(kappa: Sequence[int], gamma: Sequence, d: int,
                     normalized: bool = True, boundary_exp: int = 0):
    """Moment of x^kappa (1-|x|)^boundary_exp for the Dirichlet weight.

    Normalized: prod_i (gamma_i+1)_{kappa_i} / (|gamma|+d+1)_{|kappa|}, the
    product running over the d+1 slots with kappa_{d+1} = boundary_exp.
    """
    gamma = [Fraction(g) for g in gamma]
    if len(gamma) != d + 1 or len(kappa) != d:
        raise ValueError("need d exponents and d+1 weight parameters")
    if any(g <= -1 for g in gamma):
        raise ValueError("weight exponents must exceed -1")
    exps = list(kappa) + [boundary_exp]
    total = sum(exps)
    ratio = Fraction(1)
    for g, k in zip(gamma, exps):
        ratio *= pochhammer(g + 1, k)
    ratio /= pochhammer(sum(gamma) + d + 1, total)
    if normalized:
        return ratio
    base = gamma_quotient([g + 1 for g in gamma],
                          [sum(gamma) + d + 1] + [Fraction(1)] * d)
    if base is not None:
        return ratio * base
    return MomentValue(ratio, f"dirichlet-base:d={d}")


def beta_bulk_integral(p: MPoly, alpha) -> Fraction:
    """Exact integral of p(t) (1-t)^alpha over [0, 1] (rational in alpha)."""
    alpha = Fraction(alpha)
    out = Fraction(0)
    for j, c in p.coeffs_in(T).items():
        out += c.constant_value() * factorial(j) / pochhammer(alpha + 1, j + 1)
    return out


def orth_check_q(ctx: KrallContext, n: int, m: int) -> Fraction:
    """Residual of the bulk+point orthogonality of the transformed family:

        int q_n q_m (1-t)^alpha dt + q_n(0) q_m(0) / (a0 (alpha+1)),

    exactly zero for n != m in the one-step, beta = 1 setting.
    """
    if ctx.k != 1 or ctx.beta != 1:
        raise ValueError("bulk+point orthogonality needs k = 1, beta = 1")
    alpha = Fraction(ctx.alpha)
    a0 = Fraction(ctx.a[0])
    qn = ctx.q(n).as_poly()
    qm = ctx.q(m).as_poly()
    bulk = beta_bulk_integral(qn * qm, alpha)
    at0 = {T: Fraction(0)}
    point = qn.eval_all(at0) * qm.eval_all(at0) / (a0 * (alpha + 1))
    return bulk + point


def orth_check_qhat(ctx: KrallContext, s: int, n: int, m: int) -> Fraction:
    """Residual of the weight-s variant, with the shifted prefactor:

        (1 + s(alpha+s)/(a0(alpha+1))) int qhat_n qhat_m (1-t)^{alpha+2s} dt
        + qhat_n(0) qhat_m(0) / (a0 (alpha+1)).
    """
    if ctx.k != 1 or ctx.beta != 1:
        raise ValueError("bulk+point orthogonality needs k = 1, beta = 1")
    alpha = Fraction(ctx.alpha)
    a0 = Fraction(ctx.a[0])
    qn = ctx.qhat(n, s).as_poly()
    qm = ctx.qhat(m, s).as_poly()
    pref = 1 + Fraction(s) * (alpha + s) / (a0 * (alpha + 1))
    bulk = beta_bulk_integral(qn * qm, alpha + 2 * s)
    at0 = {T: Fraction(0)}
    point = qn.eval_all(at0) * qm.eval_all(at0) / (a0 * (alpha + 1))
    return pref * bulk + point


# -- mixed bulk/boundary/operator inner product ---------------------------------


def simplex_base_ratio(gamma: Sequence, d: int) -> Fraction:
    """Ratio of the bulk base constant (weight x2^{g2}..(1-|x|)^{g_{d+1}} on
    the d-simplex) to the boundary base constant on the (d-1)-simplex,
    resolved by Pochhammer algebra.  Equals 1/(|gamma^2|+d)."""
    gamma = [Fraction(g) for g in gamma]
    sig = sum(gamma[1:]) + d
    nums = [Fraction(1)] + [g + 1 for g in gamma[1:]] + [sig]
    dens = [sig + 1] + [g + 1 for g in gamma[1:]] + [Fraction(1)]
    ratio = gamma_quotient(nums, dens)
    if ratio is None:
        raise ArithmeticError("base constants are not rationally related")
    return ratio


class SobolevForm:
    """The mixed inner product for the transformed simplex family at
    gamma_1 = 1, k = 1: bulk integral with the x1-free weight, a boundary
    integral on the face x1 = 0, and a bulk term against the second simplex
    operator, all expressed as rational multiples of one base constant."""

    def __init__(self, sp: SimplexParams, a0):
        if Fraction(sp.gamma[0]) != 1:
            raise ValueError("the mixed form is defined for gamma_1 = 1")
        self.sp = sp
        self.a0 = Fraction(a0)
        self.sigma = Fraction(sp.alpha) + 1
        self.ratio = simplex_base_ratio(sp.gamma, sp.d)
        self.m2 = (simplex_op(2, sp.d, sp.gamma) if sp.d >= 2
                   else None)
        self._bulk_cache: dict = {}
        self._face_cache: dict = {}
        self.xvars = tuple(f"x{i}" for i in range(1, sp.d + 1))

    def _bulk_monomial(self, e: tuple) -> Fraction:
        hit = self._bulk_cache.get(e)
        if hit is None:
            g = [Fraction(x) for x in self.sp.gamma]
            val = Fraction(factorial(e[0]))
            for i in range(2, self.sp.d + 1):
                val *= pochhammer(g[i - 1] + 1, e[i - 1])
            val /= pochhammer(self.sigma + 1, sum(e))
            hit = val * self.ratio
            self._bulk_cache[e] = hit
        return hit

    def _face_monomial(self, e: tuple) -> Fraction:
        hit = self._face_cache.get(e)
        if hit is None:
            g = [Fraction(x) for x in self.sp.gamma]
            val = Fraction(1)
            for i in range(2, self.sp.d + 1):
                val *= pochhammer(g[i - 1] + 1, e[i - 1])
            val /= pochhammer(self.sigma, sum(e[1:]))
            self._face_cache[e] = val
            hit = val
        return hit

    def _bulk(self, p: MPoly) -> Fraction:
        out = Fraction(0)
        for e, c in p.with_vars(self.xvars).extended(self.xvars).items():
            out += c * self._bulk_monomial(e)
        return out

    def _face(self, p: MPoly) -> Fraction:
        """Integral over the face x1 = 0 (p must already be restricted)."""
        out = Fraction(0)
        for e, c in p.with_vars(self.xvars).extended(self.xvars).items():
            if e[0]:
                continue
            out += c * self._face_monomial(e)
        return out

    def inner(self, f: MPoly, g: MPoly) -> MomentValue:
        """<f, g> as a rational multiple of the boundary base constant."""
        f = as_mpoly(f)
        g = as_mpoly(g)
        fg = f * g
        total = self._bulk(fg)
        f0 = f.substitute({"x1": Fraction(0)})
        g0 = g.substitute({"x1": Fraction(0)})
        total += self._face(as_mpoly(f0) * as_mpoly(g0)) / (self.a0 * self.sigma)
        if self.m2 is not None:
            total -= self._bulk(self.m2.apply(f) * g) / (self.a0 * self.sigma)
        return MomentValue(total, CPRIME)


def sobolev_inner(f: MPoly, g: MPoly, sp: SimplexParams, a0) -> MomentValue:
    """One-off evaluation of the mixed inner product (see SobolevForm)."""
    return SobolevForm(sp, a0).inner(f, g)


def sobolev_gram(sp: SimplexParams, ctx: KrallContext, nmax: int):
    """Gram matrix of {Q_eta : |eta| <= nmax} under the mixed inner product.

    Returns (labels, matrix) with Fractions in units of the base constant.
    """
    form = SobolevForm(sp, ctx.a[0])
    etas = list(multi_indices(sp.d, nmax))
    polys = [as_mpoly(Q_poly(eta, sp, ctx)) for eta in etas]
    size = len(etas)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            v = form.inner(polys[i], polys[j]).rational
            matrix[i][j] = v
            matrix[j][i] = v
    return etas, matrix


def dirichlet_gram(sp: SimplexParams, nmax: int):
    """Gram matrix of the classical simplex family under the normalized
    Dirichlet weight; diagonal by mutual orthogonality."""
    etas = list(multi_indices(sp.d, nmax))
    polys = [as_mpoly(simplex_jacobi(eta, sp)) for eta in etas]
    xvars = tuple(f"x{i}" for i in range(1, sp.d + 1))
    cache: dict = {}

    def moment(e):
        if e not in cache:
            cache[e] = dirichlet_moment(list(e), sp.gamma, sp.d)
        return cache[e]

    size = len(etas)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            prod = polys[i] * polys[j]
            v = Fraction(0)
            for e, c in prod.with_vars(xvars).extended(xvars).items():
                v += c * moment(e)
            matrix[i][j] = v
            matrix[j][i] = v
    return etas, matrix


def verify_sobolev(sp: SimplexParams, ctx: KrallContext,
                   nmax: int) -> VerdictReport:
    """Mutual orthogonality of the transformed family under the mixed form,
    with nonzero diagonal, as one record per matrix entry class."""
    report = VerdictReport("sobolev",
                           {"d": sp.d, "gamma": [str(g) for g in sp.gamma],
                            "a0": str(ctx.a[0]), "nmax": nmax})
    etas, matrix = sobolev_gram(sp, ctx, nmax)
    for i, eta in enumerate(etas):
        tag_i = ",".join(map(str, eta))
        diag_ok = matrix[i][i] != 0
        report.add(CheckRecord(f"diagonal:eta={tag_i}", {"eta": list(eta)},
                               diag_ok, str(matrix[i][i])))
        for j in range(i + 1, len(etas)):
            tag_j = ",".join(map(str, etas[j]))
            off = matrix[i][j]
            report.add(CheckRecord(
                f"orthogonal:eta={tag_i}:xi={tag_j}",
                {"eta": list(eta), "xi": list(etas[j])},
                off == 0, str(off)))
    return report.finalize()

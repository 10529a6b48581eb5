"""Jacobi polynomials on the simplex, Lauricella polynomials, the transformed
Q family, and the multivariable spectral, intertwining, and commutation checks.

Multivariable polynomials live in x_1..x_d.  The recursive simplex
construction works through the change of variables z_1 = x_1,
z_j = x_j / (1 - x_1): substitution produces rational intermediate values and
the (1-z_1)^s factor must clear every denominator, which the code asserts
rather than assumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .jacobi import jacobi_rf, lambda_val
from .krall import KrallContext, chat_factor
from .linalg import rank
from .operators import (AlgElem, DiffOp, commutator, dhat1_op, dhat2_op,
                        f_of_diffop, lauricella_op, rep_multi, simplex_op,
                        sphere_integral_op)
from .poly import MPoly, NonPolynomialError, as_ratfn, pochhammer, ratfn
from .report import CheckRecord, VerdictReport

T = "t"


@dataclass(frozen=True)
class MultiIndex:
    """A d-tuple of nonnegative integers with the slice conventions
    head(j) = (v_1..v_j) and tail(j) = (v_j..v_d)."""
    eta: tuple

    def __post_init__(self):
        if any(e < 0 for e in self.eta):
            raise ValueError("multi-index components must be nonnegative")

    @property
    def total(self) -> int:
        return sum(self.eta)

    def head(self, j: int) -> tuple:
        return self.eta[:j]

    def tail(self, j: int) -> tuple:
        return self.eta[j - 1:]

    def __iter__(self):
        return iter(self.eta)

    def __getitem__(self, i):
        return self.eta[i]

    def __len__(self):
        return len(self.eta)


def _as_index(eta) -> MultiIndex:
    if isinstance(eta, MultiIndex):
        return eta
    return MultiIndex(tuple(eta))


@dataclass(frozen=True)
class SimplexParams:
    """Dimension and weight exponents gamma_1..gamma_{d+1}; the attached
    one-variable parameters are alpha = gamma_2+..+gamma_{d+1}+d-1 and
    beta = gamma_1, so alpha+beta+1 = |gamma|+d automatically."""
    d: int
    gamma: tuple

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if len(self.gamma) != self.d + 1:
            raise ValueError("gamma needs d+1 components")

    @property
    def alpha(self):
        out = Fraction(self.d - 1)
        for g in self.gamma[1:]:
            out = g + out
        return out

    @property
    def beta(self):
        return self.gamma[0]

    @property
    def gamma_total(self):
        out = Fraction(0)
        for g in self.gamma:
            out = g + out
        return out

    def tail_sum(self, j: int):
        """gamma_j + ... + gamma_{d+1} (1-based)."""
        out = Fraction(0)
        for g in self.gamma[j - 1:]:
            out = g + out
        return out

    def drop_first(self) -> "SimplexParams":
        return SimplexParams(self.d - 1, tuple(self.gamma[1:]))

    def shifted_first(self, k: int) -> "SimplexParams":
        return SimplexParams(self.d, (self.gamma[0] - k,) + tuple(self.gamma[1:]))


def multi_indices(d: int, max_total: int):
    """All eta in N_0^d with |eta| <= max_total, in graded lexicographic order."""
    def of_total(total, width):
        if width == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in of_total(total - first, width - 1):
                yield (first,) + rest
    for total in range(max_total + 1):
        yield from of_total(total, d)


def _clear_inner(inner, s: int, d: int) -> MPoly:
    """(1-x1)^s * inner(x2/(1-x1), .., xd/(1-x1)) with denominators cleared.

    ``inner`` is a polynomial in x1..x_{d-1} standing for the inner simplex
    factor in its own coordinates.
    """
    x1 = MPoly.var("x1")
    bindings = {f"x{i}": ratfn(MPoly.var(f"x{i + 1}"), 1 - x1)
                for i in range(1, d)}
    shifted = as_ratfn(inner).substitute(bindings)
    cleared = as_ratfn((1 - x1) ** s) * shifted
    if cleared.den != 1:
        raise NonPolynomialError(
            "inner factor denominators not cleared by the weight power")
    return cleared.num


def simplex_jacobi(eta, sp: SimplexParams):
    """Mutually orthogonal simplex polynomial of index eta, exact in x."""
    eta = _as_index(eta)
    if len(eta) != sp.d:
        raise ValueError("index length does not match the dimension")
    if sp.d == 1:
        rf = jacobi_rf(eta[0], sp.gamma[1], sp.gamma[0])
        out = rf.substitute({T: MPoly.var("x1")})
        return out.as_poly() if out.den == 1 else out
    s = sum(eta[1:])
    a1 = 2 * s + sp.tail_sum(2) + (sp.d - 1)
    outer = jacobi_rf(eta[0], a1, sp.gamma[0]).substitute({T: MPoly.var("x1")})
    inner = simplex_jacobi(eta[1:], sp.drop_first())
    cleared = _clear_inner(inner, s, sp.d)
    out = outer * as_ratfn(cleared)
    return out.as_poly() if out.den == 1 else out


def lauricella_poly(eta, sp: SimplexParams):
    """Terminating Lauricella F_A sum: the polynomial eigenfamily of the
    Appell-Lauricella operator, normalized to constant term 1."""
    eta = _as_index(eta)
    if len(eta) != sp.d:
        raise ValueError("index length does not match the dimension")
    a = eta.total + sp.gamma_total + sp.d
    acc = as_ratfn(0)
    ranges = [range(e + 1) for e in eta]
    def rec(j, chosen):
        if j == sp.d:
            yield tuple(chosen)
            return
        for k in ranges[j]:
            chosen.append(k)
            yield from rec(j + 1, chosen)
            chosen.pop()
    for kvec in rec(0, []):
        total = sum(kvec)
        coeff = as_ratfn(pochhammer(a, total))
        for j, kj in enumerate(kvec):
            coeff = coeff * pochhammer(Fraction(-eta[j]), kj)
            den = pochhammer(sp.gamma[j] + 1, kj) * _factorial(kj)
            coeff = coeff / as_ratfn(den)
        if coeff.is_zero:
            continue
        mono = MPoly.const(1)
        for j, kj in enumerate(kvec):
            if kj:
                mono = mono * MPoly.var(f"x{j + 1}") ** kj
        acc = acc + coeff * mono
    return acc.as_poly() if acc.den == 1 else acc


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def Q_poly(eta, sp: SimplexParams, ctx: KrallContext):
    """Transformed simplex polynomial: the weight-s Wronskian factor in z_1
    times the inner simplex polynomial, rewritten in x.

    The context must carry the parameters attached to sp (alpha from the
    gamma tail, beta = gamma_1 a positive integer).
    """
    eta = _as_index(eta)
    if len(eta) != sp.d:
        raise ValueError("index length does not match the dimension")
    if not (as_ratfn(ctx.alpha) == as_ratfn(sp.alpha)
            and as_ratfn(Fraction(ctx.beta)) == as_ratfn(sp.beta)):
        raise ValueError("context parameters do not match the simplex weights")
    s = sum(eta[1:])
    outer = ctx.qhat(eta[0], s).substitute({T: MPoly.var("x1")})
    if sp.d == 1:
        return outer.as_poly() if outer.den == 1 else outer
    inner = simplex_jacobi(eta[1:], sp.drop_first())
    cleared = _clear_inner(inner, s, sp.d)
    out = outer * as_ratfn(cleared)
    return out.as_poly() if out.den == 1 else out


# -- verification drivers ------------------------------------------------------


def verify_simplex_spectra(sp: SimplexParams, nmax: int) -> VerdictReport:
    """All d spectral equations on every simplex polynomial with |eta| <= nmax."""
    report = VerdictReport("simplex-spectra",
                           {"d": sp.d, "gamma": [str(g) for g in sp.gamma],
                            "nmax": nmax})
    ops = {j: simplex_op(j, sp.d, sp.gamma) for j in range(1, sp.d + 1)}
    for eta in multi_indices(sp.d, nmax):
        P = as_ratfn(simplex_jacobi(eta, sp))
        for j in range(1, sp.d + 1):
            lam = lambda_val(sum(eta[j - 1:]), sp.tail_sum(j) + sp.d + 1 - j)
            residual = ops[j].apply(P) - as_ratfn(lam) * P
            report.add(CheckRecord(
                f"spectral:j={j}:eta={','.join(map(str, eta))}",
                {"j": j, "eta": list(eta)}, residual.is_zero,
                "0" if residual.is_zero else repr(residual)))
    return report.finalize()


def verify_lauricella(sp: SimplexParams, nmax: int) -> VerdictReport:
    """The Appell-Lauricella spectral equation on the terminating F_A family."""
    report = VerdictReport("lauricella",
                           {"d": sp.d, "gamma": [str(g) for g in sp.gamma],
                            "nmax": nmax})
    op = lauricella_op(sp.d, sp.gamma)
    for eta in multi_indices(sp.d, nmax):
        G = as_ratfn(lauricella_poly(eta, sp))
        lam = lambda_val(sum(eta), sp.gamma_total + sp.d)
        residual = op.apply(G) - as_ratfn(lam) * G
        report.add(CheckRecord(
            f"lauricella:eta={','.join(map(str, eta))}",
            {"eta": list(eta)}, residual.is_zero,
            "0" if residual.is_zero else repr(residual)))
    return report.finalize()


def verify_multivariable_darboux(sp: SimplexParams, ctx: KrallContext,
                                 f: MPoly, nmax: int,
                                 Bf: Optional[AlgElem] = None,
                                 Bpsi: Optional[AlgElem] = None) -> VerdictReport:
    """The four transformed-family checks at fixed parameters:

    (i)   the connection Q_eta = chat * Bpsi[P_eta^{gamma - k e1}];
    (ii)  the operator intertwining relation in d variables;
    (iii) the eigenvalue equation of Bf on every Q_eta;
    (iv)  the higher spectral equations (j >= 2) on every Q_eta.
    """
    from .krall import intertwiner_Bpsi, synthesize_Bf
    if Bf is None:
        Bf = synthesize_Bf(f, ctx)
    if Bpsi is None:
        Bpsi = intertwiner_Bpsi(ctx)
    report = VerdictReport("multivariable-darboux",
                           {"d": sp.d, "gamma": [str(g) for g in sp.gamma],
                            "k": ctx.k, "a": [str(x) for x in ctx.a],
                            "nmax": nmax, "f": repr(f)})
    d, k = sp.d, ctx.k
    gtot = sp.gamma_total
    bpsi_op = rep_multi(Bpsi, sp.gamma, d)
    bf_op = rep_multi(Bf, sp.gamma, d)
    shifted = sp.shifted_first(k)

    # (ii) operator-level intertwining, coefficient comparison after expansion
    shift = lambda_val(Fraction(k, 2), -(gtot + d))
    inner = f_of_diffop(f, lauricella_op(d, shifted.gamma), shift, var=T)
    residual_op = bf_op.compose(bpsi_op) - bpsi_op.compose(inner)
    report.add(CheckRecord("intertwine:operator", {},
                           residual_op.is_zero,
                           "0" if residual_op.is_zero else repr(residual_op)))

    for eta in multi_indices(d, nmax):
        tag = ",".join(map(str, eta))
        s = sum(eta[1:])
        Q = as_ratfn(Q_poly(eta, sp, ctx))
        # (i) connection to the shifted simplex family
        P_shift = as_ratfn(simplex_jacobi(eta, shifted))
        chat = chat_factor(eta[0], k, s, ctx.sigma)
        res1 = Q - as_ratfn(chat) * bpsi_op.apply(P_shift)
        report.add(CheckRecord(f"connection:eta={tag}", {"eta": list(eta)},
                               res1.is_zero,
                               "0" if res1.is_zero else repr(res1)))
        # (iii) eigenvalue equation for Bf
        lam = lambda_val(Fraction(sum(eta)) - Fraction(k, 2), gtot + d)
        fval = f.substitute({T: lam})
        res3 = bf_op.apply(Q) - as_ratfn(fval) * Q
        report.add(CheckRecord(f"eigen:eta={tag}", {"eta": list(eta)},
                               res3.is_zero,
                               "0" if res3.is_zero else repr(res3)))
        # (iv) the commuting simplex operators still act diagonally
        for j in range(2, d + 1):
            lamj = lambda_val(sum(eta[j - 1:]), sp.tail_sum(j) + d + 1 - j)
            res4 = simplex_op(j, d, sp.gamma).apply(Q) - as_ratfn(lamj) * Q
            report.add(CheckRecord(f"higher-spectral:j={j}:eta={tag}",
                                   {"j": j, "eta": list(eta)}, res4.is_zero,
                                   "0" if res4.is_zero else repr(res4)))
    return report.finalize()


def verify_commutants(sp: SimplexParams, Bf: Optional[AlgElem] = None) -> VerdictReport:
    """Exact operator commutators at these parameters.

    Covers the generator relation, the invariance of the higher simplex
    operators under the two-generator algebra, the sphere-integral operators
    against the Appell-Lauricella operator (and against the represented Bf
    for indices 2 <= i < j <= d+1), plus pairwise commutativity of the
    represented family.
    """
    d = sp.d
    report = VerdictReport("commutants",
                           {"d": d, "gamma": [str(g) for g in sp.gamma]})
    dh1, dh2 = dhat1_op(d), dhat2_op(sp.gamma, d)
    res = commutator(dh2, dh1) - dh2
    report.add(CheckRecord("commutator:[G2,G1]=G2", {}, res.is_zero,
                           "0" if res.is_zero else repr(res)))
    for j in range(2, d + 1):
        mj = simplex_op(j, d, sp.gamma)
        for name, gen in (("G1", dh1), ("G2", dh2)):
            res = commutator(mj, gen)
            report.add(CheckRecord(f"commutator:[M{j},{name}]", {"j": j},
                                   res.is_zero,
                                   "0" if res.is_zero else repr(res)))
    md = lauricella_op(d, sp.gamma)
    for i, j in combinations(range(1, d + 2), 2):
        h = sphere_integral_op(i, j, d, sp.gamma)
        res = commutator(h, md)
        report.add(CheckRecord(f"commutator:[H{i}{j},M]", {"i": i, "j": j},
                               res.is_zero,
                               "0" if res.is_zero else repr(res)))
    if Bf is not None:
        bf_op = rep_multi(Bf, sp.gamma, d)
        for i, j in combinations(range(2, d + 2), 2):
            h = sphere_integral_op(i, j, d, sp.gamma)
            res = commutator(h, bf_op)
            report.add(CheckRecord(f"commutator:[H{i}{j},Bf]",
                                   {"i": i, "j": j}, res.is_zero,
                                   "0" if res.is_zero else repr(res)))
        for j in range(2, d + 1):
            mj = simplex_op(j, d, sp.gamma)
            res = commutator(bf_op, mj)
            report.add(CheckRecord(f"commutator:[Bf,M{j}]", {"j": j},
                                   res.is_zero,
                                   "0" if res.is_zero else repr(res)))
    return report.finalize()


def basis_rank(sp: SimplexParams, ctx: KrallContext, nmax: int):
    """Rank of the coefficient matrix of {Q_eta : |eta| <= nmax}.

    Returns (rank, count); the family is a graded basis exactly when the two
    agree, with count = C(nmax + d, d) monomials up to the degree bound.
    """
    etas = list(multi_indices(sp.d, nmax))
    monomials = {}
    rows = []
    for eta in etas:
        Q = Q_poly(eta, sp, ctx)
        if not isinstance(Q, MPoly):
            raise ValueError("basis rank needs rational parameters")
        row = {}
        for e, c in Q.with_vars(tuple(f"x{i}" for i in range(1, sp.d + 1))) \
                     .extended(tuple(f"x{i}" for i in range(1, sp.d + 1))).items():
            monomials.setdefault(e, len(monomials))
            row[monomials[e]] = c
        rows.append(row)
    width = len(monomials)
    dense = [[row.get(j, Fraction(0)) for j in range(width)] for row in rows]
    return rank(dense), len(etas)


def dimension_count(d: int, n: int) -> int:
    """Number of indices with |eta| = n: C(n+d-1, d-1)."""
    from math import comb
    return comb(n + d - 1, d - 1)

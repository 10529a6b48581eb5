"""Moment functionals and orthogonality.

The independent oracle for every moment formula is literal iterated
integration: polynomial antiderivatives evaluated between polynomial bounds,
which works whenever the weight exponents are nonnegative integers.  The
Pochhammer-ratio formulas must agree with it there, and the gamma-quotient
algebra extends them to fractional exponents."""

import random
from fractions import Fraction as F

import pytest

from alde.krall import KrallContext
from alde.measures import (MomentValue, SobolevForm, beta_bulk_integral,
                           beta_moment, dirichlet_gram, dirichlet_moment,
                           gamma_quotient, orth_check_q, orth_check_qhat,
                           simplex_base_ratio, sobolev_gram, sobolev_inner,
                           verify_sobolev)
from alde.poly import MPoly, as_mpoly, substitute
from alde.simplex import Q_poly, SimplexParams, multi_indices, simplex_jacobi

T = MPoly.var("t")


def integrate_unit_interval(p: MPoly, var: str = "t") -> F:
    """Power-rule oracle: integral of a polynomial over [0, 1]."""
    out = F(0)
    for j, c in p.coeffs_in(var).items():
        out += c.constant_value() / (j + 1)
    return out


def integrate_simplex(p: MPoly, d: int) -> F:
    """Iterated-integration oracle over the standard simplex in x1..xd."""
    vars = [f"x{i}" for i in range(1, d + 1)]
    work = p.with_vars(tuple(vars))
    for i in range(d, 0, -1):
        var = vars[i - 1]
        anti_terms = {}
        for j, c in work.coeffs_in(var).items():
            anti_terms[j + 1] = c / (j + 1)
        anti = MPoly.zero(())
        x = MPoly.var(var)
        for j, c in anti_terms.items():
            anti = anti + c * x ** j
        upper = MPoly.const(1)
        for lower_var in vars[:i - 1]:
            upper = upper - MPoly.var(lower_var)
        work = as_mpoly(substitute(anti, {var: upper}))
    return work.constant_value()


def test_gamma_quotient():
    assert gamma_quotient([F(5)], [F(3)]) == 12       # Gamma(5)/Gamma(3)
    assert gamma_quotient([F(3, 2)], [F(1, 2)]) == F(1, 2)
    assert gamma_quotient([F(1, 2)], [F(5, 2)]) == F(1) / (F(1, 2) * F(3, 2))
    assert gamma_quotient([F(1, 2)], [F(1, 3)]) is None


def test_beta_moment_normalized_against_oracle():
    for alpha in (0, 1, 3):
        for beta in (0, 1, 2):
            w = (1 - T) ** alpha * T ** beta
            total = integrate_unit_interval(w)
            for m in range(5):
                oracle = integrate_unit_interval(T ** m * w) / total
                assert beta_moment(m, alpha, beta) == oracle


def test_beta_moment_unnormalized():
    assert beta_moment(1, 0, 0, normalized=False) == F(1, 2)
    for alpha in (0, 2):
        for m in range(4):
            w = (1 - T) ** alpha
            assert beta_moment(m, alpha, 0, normalized=False) == \
                integrate_unit_interval(T ** m * w)
    # fractional exponent: closed Pochhammer form m!/(alpha+1)_{m+1}
    from alde.poly import pochhammer
    assert beta_moment(2, F(1, 2), 0, normalized=False) == \
        2 / pochhammer(F(3, 2), 3)
    # non-integer second exponent keeps a scale tag
    tagged = beta_moment(1, F(1, 2), F(1, 2), normalized=False)
    assert isinstance(tagged, MomentValue) and tagged.tag != "unit"
    with pytest.raises(ValueError):
        beta_moment(0, F(-3, 2), 0)


def test_dirichlet_moment_against_oracle():
    for gamma in [(0, 0, 0), (1, 0, 2), (2, 1, 0)]:
        d = 2
        weight = (MPoly.var("x1") ** gamma[0] * MPoly.var("x2") ** gamma[1]
                  * (1 - MPoly.var("x1") - MPoly.var("x2")) ** gamma[2])
        total = integrate_simplex(weight, d)
        for kappa in [(0, 0), (1, 0), (0, 1), (2, 1)]:
            mono = MPoly.var("x1") ** kappa[0] * MPoly.var("x2") ** kappa[1]
            oracle = integrate_simplex(mono * weight, d) / total
            assert dirichlet_moment(kappa, gamma, d) == oracle
    assert dirichlet_moment([1, 0], [0, 0, 0], 2) == F(1, 3)


def test_dirichlet_reduces_to_beta():
    rng = random.Random(8)
    for _ in range(200):
        m = rng.randint(0, 6)
        g1 = F(rng.randint(0, 8), rng.randint(1, 4))
        g2 = F(rng.randint(0, 8), rng.randint(1, 4))
        # d=1 weight x^{g1} (1-x)^{g2} matches the beta weight with
        # (alpha, beta) = (g2, g1)
        assert dirichlet_moment([m], [g1, g2], 1) == beta_moment(m, g2, g1)


def test_moment_scale_tags_never_mix():
    a = MomentValue(F(1), "unit")
    b = MomentValue(F(1), "cprime")
    with pytest.raises(ValueError):
        a + b
    assert (MomentValue(F(0), "unit") + b).rational == 1


def test_base_ratio():
    for d, gamma in [(2, (F(1), F(0), F(0))), (2, (F(1), F(1, 2), F(1))),
                     (3, (F(1), F(1), F(2), F(1, 2)))]:
        sig = sum(gamma[1:]) + d
        assert simplex_base_ratio(gamma, d) == 1 / sig


CTX = KrallContext(F(1), 1, 1, [F(1)])   # alpha = 1 matches the d=2 weights
WORKED = SimplexParams(2, (F(1), F(0), F(0)))


def test_bulk_point_orthogonality():
    ctx0 = KrallContext(F(0), 1, 1, [F(1)])
    assert orth_check_q(ctx0, 0, 1) == 0
    for n in range(5):
        for m in range(n + 1, 5):
            assert orth_check_q(ctx0, n, m) == 0
        assert orth_check_q(ctx0, n, n) > 0


def test_bulk_point_orthogonality_is_bilinear():
    # scaling one argument scales the residual: recompute the two pieces by
    # hand with a scaled polynomial
    ctx0 = KrallContext(F(0), 1, 1, [F(1)])
    qn = ctx0.q(1).as_poly()
    qm = ctx0.q(2).as_poly()
    c = F(7, 3)
    alpha, a0 = F(0), F(1)
    def form(u, v):
        bulk = beta_bulk_integral(u * v, alpha)
        point = (u.eval_all({"t": F(0)}) * v.eval_all({"t": F(0)})
                 / (a0 * (alpha + 1)))
        return bulk + point
    assert form(qn * c, qm) == c * form(qn, qm)
    norm = form(qn, qn)
    assert form(qn * c, qn * c) == c ** 2 * norm


def test_weighted_orthogonality():
    for s in (1, 2):
        for n in range(4):
            for m in range(n + 1, 4):
                assert orth_check_qhat(CTX, s, n, m) == 0
    # the weight-0 variant is the plain one, prefactor 1
    for n in range(3):
        for m in range(n + 1, 3):
            assert orth_check_qhat(CTX, 0, n, m) == orth_check_q(CTX, n, m)


def test_sobolev_constant_case():
    one = MPoly.const(1)
    for a0 in (F(1), F(2, 3)):
        val = sobolev_inner(one, one, WORKED, a0)
        sig = F(WORKED.alpha) + 1
        assert val == MomentValue((1 + 1 / a0) / sig, "cprime")


def test_sobolev_orthogonality_instances():
    q10 = as_mpoly(Q_poly((1, 0), WORKED, CTX))
    q01 = as_mpoly(Q_poly((0, 1), WORKED, CTX))
    q20 = as_mpoly(Q_poly((2, 0), WORKED, CTX))
    form = SobolevForm(WORKED, F(1))
    assert form.inner(q10, q01).is_zero
    assert form.inner(q10, q20).is_zero
    assert form.inner(as_mpoly(Q_poly((0, 0), WORKED, CTX)), q20).is_zero
    assert not form.inner(q10, q10).is_zero


def test_sobolev_two_case_split():
    # differing trailing indices: the inner-simplex factor alone vanishes
    inner_sp = WORKED.drop_first()
    p0 = as_mpoly(simplex_jacobi((0,), inner_sp))
    p1 = as_mpoly(simplex_jacobi((1,), inner_sp))
    weight_moment = F(0)
    prod = p0 * p1
    for j, c in prod.coeffs_in("x1").items():
        weight_moment += c.constant_value() * dirichlet_moment(
            [j], inner_sp.gamma, 1)
    assert weight_moment == 0
    # equal trailing indices: the one-variable bracket is the weighted
    # residual, zero by the shifted orthogonality
    assert orth_check_qhat(CTX, 1, 0, 1) == 0


def test_sobolev_gram_and_verdict():
    rep = verify_sobolev(WORKED, CTX, 3)
    assert rep.passed
    etas, gram = sobolev_gram(WORKED, CTX, 2)
    size = len(etas)
    assert all(gram[i][j] == gram[j][i] for i in range(size)
               for j in range(size))
    assert all(gram[i][i] != 0 for i in range(size))


def test_dirichlet_gram_diagonal():
    for gamma in [(F(1), F(0), F(0)), (F(1, 2), F(1), F(2))]:
        etas, gram = dirichlet_gram(SimplexParams(2, gamma), 3)
        for i in range(len(etas)):
            assert gram[i][i] != 0
            for j in range(i + 1, len(etas)):
                assert gram[i][j] == 0

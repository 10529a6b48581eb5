"""Kernel sequences (-1)^n p(n): ladder families, eigen-polynomial
membership, and discrete Wronskians.

The defining oracle for the ladder families is the lowering chain of the
extended recurrence operator: with L = A_nu E + B_nu + C_nu E^{-1} acting on
a shifted index nu, each family member must map to the previous one and the
bottom member to zero.  That identity over the rational-function field in nu
pins every sign and denominator."""

from fractions import Fraction as F

import pytest

from alde.jacobi import recurrence_ratfns
from alde.poly import MPoly, as_ratfn
from alde.sequences import (SignedSeq, is_lambda_polynomial, phi_seq,
                            psi_family, psi_seq, tau_poly)

NU = "n"


def lowering_residual(upper: SignedSeq, lower, alpha, beta):
    """L[(-1)^nu b(nu)] - (-1)^nu b_low(nu) as a rational function of nu."""
    A, B, C = recurrence_ratfns(alpha, beta, var=NU)
    nu = MPoly.var(NU)
    b = upper.body
    up = b.substitute({NU: nu + 1})
    down = b.substitute({NU: nu - 1})
    low = lower.body if isinstance(lower, SignedSeq) else as_ratfn(lower)
    return -A * up + B * b - C * down - low


@pytest.mark.parametrize("alpha,beta", [(F(0), 1), (F(1, 3), 2), (F(1, 2), 3)])
def test_phi_lowering_chain(alpha, beta):
    for branch in (1, 2):
        top = beta - 1 if branch == 1 else 2
        prev = None
        for j in range(top + 1):
            seq = phi_seq(branch, j, alpha, beta)
            target = prev if prev is not None else 0
            assert lowering_residual(seq, target, alpha, beta).is_zero, \
                (branch, j)
            prev = seq


def test_phi_values():
    n = MPoly.var(NU)
    assert phi_seq(1, 0, F(2, 3), 1).body == 1
    al = MPoly.var("alpha")
    body = phi_seq(2, 0, al, 1).body
    assert body == as_ratfn((n + 1) * (n + al + 1)) / as_ratfn(al + 1)
    # branch 1, j=1 at beta=2: (n+1)_1 (-n-2)_1 / (1! * (1-2)_1) = (n+1)(n+2)
    assert phi_seq(1, 1, F(0), 2).body == (n + 1) * (n + 2)


def test_phi_branch1_requires_j_below_beta():
    with pytest.raises(ValueError):
        phi_seq(1, 1, F(0), 1)
    with pytest.raises(ValueError):
        phi_seq(1, 2, F(1), 2)


def test_psi_values():
    n = MPoly.var(NU)
    al, a0 = MPoly.var("alpha"), MPoly.var("a0")
    body = psi_seq(0, al, 1, [a0]).body
    assert body == as_ratfn(a0) + as_ratfn((n + 1) * (n + al + 1)) / (al + 1)
    assert psi_seq(0, F(0), 1, [F(0)]).body == (n + 1) ** 2
    # j = 1 is the definitional unfolding over both branches
    a0v, a1v = F(2), F(1, 3)
    lhs = psi_seq(1, F(1, 2), 2, [a0v, a1v]).body
    rhs = (phi_seq(2, 1, F(1, 2), 2).body
           + a0v * phi_seq(1, 1, F(1, 2), 2).body
           + a1v * phi_seq(1, 0, F(1, 2), 2).body)
    assert lhs == rhs


def test_psi_lowering_chain():
    alpha, beta = F(1, 2), 2
    fam = psi_family(2, alpha, beta, [F(1), F(1, 3)])
    assert lowering_residual(fam[0], 0, alpha, beta).is_zero
    assert lowering_residual(fam[1], fam[0], alpha, beta).is_zero


def test_signed_values_and_shift():
    seq = psi_seq(0, F(0), 1, [F(1)])   # body 1 + (n+1)^2
    assert seq.value(0) == 2
    assert seq.value(1) == -5
    assert seq.value(-1) == -1
    shifted = seq.index_shifted(1)
    for m in (-2, 0, 3):
        assert shifted.value(m) == seq.value(m + 1)


def test_is_lambda_polynomial():
    n = MPoly.var(NU)
    al = MPoly.var("alpha")
    body = as_ratfn((n + 1) * (n + al + 1)) / (al + 1)
    assert is_lambda_polynomial(SignedSeq(body), al + 2)
    assert not is_lambda_polynomial(SignedSeq(as_ratfn(n)), F(2))
    assert is_lambda_polynomial(SignedSeq(as_ratfn(1)), F(5, 7))


def test_generated_families_are_lambda_polynomials():
    for alpha, beta, k, a in [
        (F(0), 1, 1, [F(1)]),
        (F(1, 2), 2, 2, [F(1), F(1, 3)]),
        (F(1), 3, 2, [F(2), F(1)]),
    ]:
        for seq in psi_family(k, alpha, beta, a):
            assert is_lambda_polynomial(seq, alpha + beta + 1)


def test_tau_values():
    n = MPoly.var(NU)
    al, a0 = MPoly.var("alpha"), MPoly.var("a0")
    fam = [psi_seq(0, al, 1, [a0])]
    tau = tau_poly(fam)
    assert tau == as_ratfn(a0) + as_ratfn((n + 1) * (n + al + 1)) / (al + 1)
    assert tau_poly([SignedSeq(as_ratfn(1))]) == 1
    # two-member Wronskian of bodies {1, lambda_n}: lambda_{n-1} - lambda_n
    sigma = F(1, 3) + F(2)   # alpha + beta
    lam = -n * (n + sigma + 1)
    tau2 = tau_poly([SignedSeq(as_ratfn(1)), SignedSeq(as_ratfn(lam))])
    assert tau2 == 2 * n + sigma


def test_tau_shift():
    n = MPoly.var(NU)
    fam = psi_family(2, F(1, 2), 2, [F(1), F(1, 3)])
    tau = tau_poly(fam)
    assert tau_poly(fam, shift=1) == tau.substitute({NU: n + 1})
    assert tau_poly(fam, shift=-2) == tau.substitute({NU: n - 2})

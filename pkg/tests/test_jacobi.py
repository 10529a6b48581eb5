"""Classical layer: series values, reflection identity, bispectral pair,
parameter-shift identities, and the Wronskian-transformed families."""

from fractions import Fraction as F

import pytest

from alde.jacobi import (JacobiParams, jacobi_poly, jacobi_rf, laid_residual,
                         lambda_val, pfaff_check, q_poly, qhat_poly,
                         recover_recurrence, recurrence_coeffs)
from alde.linalg import LinearSolveError
from alde.operators import (WeightedPoly, d2_op, jacobi_op,
                            jacobi_op_weighted, op_apply)
from alde.poly import MPoly, as_ratfn
from alde.sequences import psi_family

T = MPoly.var("t")

GRID = [(F(-1, 2), F(1, 2)), (F(0), F(0)), (F(1, 2), F(2)),
        (F(1), F(0)), (F(2), F(-1, 2))]


def test_series_values():
    assert jacobi_poly(0, JacobiParams(F(3), F(-1, 2))) == 1
    assert jacobi_poly(1, JacobiParams(F(0), F(0))) == 2 * T - 1
    assert jacobi_poly(1, JacobiParams(F(1), F(0))) == 3 * T - 1
    assert jacobi_poly(1, JacobiParams(F(0), F(1))) == 6 * T - 4
    assert jacobi_poly(-1, JacobiParams(F(0), F(0))).is_zero
    with pytest.raises(ValueError):
        jacobi_poly(2, JacobiParams(F(-1), F(0)))


def test_degree_and_leading():
    for al, be in GRID:
        for n in range(7):
            assert jacobi_poly(n, JacobiParams(al, be)).degree() == n


def test_pfaff_grid():
    for al, be in GRID:
        for n in range(7):
            assert pfaff_check(n, JacobiParams(al, be))


def test_recurrence_values():
    A, B, C = recurrence_coeffs(0, JacobiParams(F(1), F(0)))
    assert (A, B, C) == (F(1, 3), F(1, 3), F(0))
    A, B, C = recurrence_coeffs(2, JacobiParams(F(0), F(0)))
    assert A == F(9, 30) and C == F(4, 20) and B == A + C


def test_recurrence_exact_on_grid():
    for al, be in GRID:
        params = JacobiParams(al, be)
        for n in range(9):
            A, B, C = recurrence_coeffs(n, params)
            res = (as_ratfn(T) * jacobi_rf(n, al, be)
                   - (A * jacobi_rf(n + 1, al, be)
                      + B * jacobi_rf(n, al, be)
                      + C * jacobi_rf(n - 1, al, be)))
            assert res.is_zero, (al, be, n)
            assert B == A + C


def test_spectral_equation_grid():
    for al, be in GRID:
        op = jacobi_op(al, be)
        for n in range(9):
            p = jacobi_rf(n, al, be)
            res = op.apply(p) - as_ratfn(lambda_val(n, al + be + 1)) * p
            assert res.is_zero, (al, be, n)


def test_lambda_values():
    assert lambda_val(2, F(3)) == -10
    xi = MPoly.var("xi")
    assert lambda_val(0, xi).is_zero
    assert lambda_val(F(5, 2), F(3)) == -F(55, 4)
    assert laid_residual(3, 1, F(2)) == 0
    for n in range(6):
        for k in (1, 2, 3):
            assert laid_residual(n, k, F(7, 3)) == 0


def test_beta_lowering_identities():
    # p_n + p_{n-1} = ((2n+a+b)/(a+b)) p_n^{a,b-1} and the second-order
    # lowering through the raw generator, away from a+b in {0, 1}.
    for al, be in [(F(1, 2), F(2)), (F(1), F(3)), (F(2), F(2))]:
        sig = al + be
        for n in range(1, 7):
            lhs = jacobi_rf(n, al, be) + jacobi_rf(n - 1, al, be)
            rhs = as_ratfn(F(2 * n) + sig) / sig * jacobi_rf(n, al, be - 1)
            assert (lhs - rhs).is_zero
            lowered = d2_op(al).apply(jacobi_rf(n, al, be - 2))
            rhs2 = -as_ratfn(1) / (sig * (sig - 1)) * lowered
            assert (jacobi_rf(n - 1, al, be) - rhs2).is_zero


def test_weighted_lowering_identities():
    # the same two identities inside the weight-(1-t)^s space
    al, be, s = F(1, 2), F(2), 2
    sig = al + be
    w = as_ratfn((1 - T) ** s)
    from alde.operators import d2s_op
    for n in range(1, 5):
        lhs = (jacobi_rf(n, al + 2 * s, be)
               + jacobi_rf(n - 1, al + 2 * s, be)) * w
        rhs = (as_ratfn(sig) / (sig + 2 * s)
               * as_ratfn(2 * (n + s) + sig) / sig
               * jacobi_rf(n, al + 2 * s, be - 1) * w)
        assert (lhs - rhs).is_zero
        lowered = d2s_op(al, s).apply(jacobi_rf(n, al + 2 * s, be - 2) * w)
        rhs2 = -as_ratfn(1) / ((sig + 2 * s) * (sig + 2 * s - 1)) * lowered
        assert (jacobi_rf(n - 1, al + 2 * s, be) * w - rhs2).is_zero


def test_weighted_spectral_equation():
    for al, be, s in [(F(0), F(1), 1), (F(1, 2), F(1), 2), (F(1), F(2), 1)]:
        op = jacobi_op_weighted(al, be, s)
        for n in range(5):
            wp = WeightedPoly(jacobi_poly(n, JacobiParams(al + 2 * s, be)), s)
            out = op_apply(op, wp)
            assert out == wp.scaled(lambda_val(n + s, al + be + 1)), (al, n)


PSIS = psi_family(1, F(0), 1, [F(1)])
PARAMS = JacobiParams(F(0), F(1))


def test_q_values():
    assert q_poly(0, PARAMS, PSIS) == 1
    assert q_poly(1, PARAMS, PSIS) == 3 - 12 * T
    assert q_poly(3, PARAMS, []) == jacobi_poly(3, PARAMS)


def test_q_degree_tracks_index():
    for n in range(8):
        assert q_poly(n, PARAMS, PSIS).degree() == n
    fam2 = psi_family(2, F(1, 2), 2, [F(1), F(1, 3)])
    params2 = JacobiParams(F(1, 2), F(2))
    for n in range(6):
        assert q_poly(n, params2, fam2).degree() == n


def test_qhat_values():
    assert qhat_poly(2, 0, PARAMS, PSIS) == q_poly(2, PARAMS, PSIS)
    assert qhat_poly(0, 1, PARAMS, PSIS) == -2


def test_qhat_reparametrization():
    # qhat_{n,s} at (alpha, 1, a0) is (-1)^s (alpha+2s+1)/(alpha+1) times the
    # plain family at (alpha+2s, 1, a0s), a0s = (a0(1+alpha)+s(s+alpha))/(alpha+2s+1)
    for al, a0 in [(F(0), F(1)), (F(1, 2), F(2, 3)), (F(1), F(1))]:
        fam = psi_family(1, al, 1, [a0])
        params = JacobiParams(al, F(1))
        for s in (1, 2):
            a0s = (a0 * (1 + al) + s * (s + al)) / (al + 2 * s + 1)
            fam_s = psi_family(1, al + 2 * s, 1, [a0s])
            params_s = JacobiParams(al + 2 * s, F(1))
            scale = F((-1) ** s) * (al + 2 * s + 1) / (al + 1)
            for n in range(5):
                lhs = as_ratfn(qhat_poly(n, s, params, fam))
                rhs = as_ratfn(scale) * q_poly(n, params_s, fam_s)
                assert (lhs - rhs).is_zero, (al, a0, s, n)


def test_recover_recurrence():
    # the empty family reduces to the classical coefficients
    for n in (1, 2, 3):
        A, B, C = recover_recurrence(PARAMS, [], n)
        Ac, Bc, Cc = recurrence_coeffs(n, PARAMS)
        assert (A, B, C) == (as_ratfn(Ac), as_ratfn(Bc), as_ratfn(Cc))
    A, B, C = recover_recurrence(PARAMS, PSIS, 1)
    q0, q1, q2 = (as_ratfn(q_poly(n, PARAMS, PSIS)) for n in range(3))
    res = as_ratfn(T) * q1 - (A * q2 + B * q1 + C * q0)
    assert res.is_zero
    # value consistency at t = 1
    at1 = {"t": F(1)}
    assert q1.eval_all(at1) == (A * q2 + B * q1 + C * q0).eval_all(at1)


def test_recover_recurrence_all_n():
    fam2 = psi_family(2, F(1, 2), 2, [F(1), F(1, 3)])
    params2 = JacobiParams(F(1, 2), F(2))
    for n in (1, 2, 4):
        A, B, C = recover_recurrence(params2, fam2, n)
        qs = {m: as_ratfn(q_poly(m, params2, fam2)) for m in (n - 1, n, n + 1)}
        res = as_ratfn(T) * qs[n] - (A * qs[n + 1] + B * qs[n] + C * qs[n - 1])
        assert res.is_zero

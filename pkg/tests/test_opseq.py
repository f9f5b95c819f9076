from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from elliptic_op import opseq
from elliptic_op.errors import DomainError
from elliptic_op.moments import Params, ShiftedParams
from elliptic_op.specialfn import hyp2f1

from conftest import aux, sequence


def close(x, y, digits):
    return abs(x - y) <= mpf(10) ** -digits * max(abs(y), 1)


def test_required_digits():
    assert opseq.required_digits(200) == 470
    assert opseq.required_digits(10, 80) == 80


def test_legendre_values():
    s = sequence(0, 0, "0.5", 50, 10)
    with mpmath.workdps(70):
        assert close(s.beta[1], mpf(1) / 3, 48)
        assert close(s.D[2], mpf(4) / 3, 48)
        for n in range(1, 10):
            assert close(s.beta[n], mpf(n * n) / (4 * n * n - 1), 48)
            assert close(s.p1[n], -mpf(n * (n - 1)) / (2 * (2 * n - 1)), 48)


def test_chebyshev_second_kind():
    s = sequence("1/2", 0, 0, 50, 12)
    with mpmath.workdps(70):
        assert all(close(s.beta[n], mpf(1) / 4, 48) for n in range(1, 13))


def test_sequence_raises_precision():
    s = sequence("0.3", "0.7", "0.5", 40, 30)
    assert s.digits == 96


def test_beta_two_routes():
    s = sequence("0.3", "0.7", "0.5", 80, 20)
    with mpmath.workdps(100):
        for n in range(1, 20):
            assert close(s.beta_from_D(n), s.beta[n], 75)
            assert close(s.beta[n], s.h[n] / s.h[n - 1], 75)
            assert close(s.p1[n], -mpmath.fsum(s.beta[:n]), 75)


def test_aux_initial_values():
    s = sequence("0.3", "0.7", "0.5", 60, 10)
    x = aux("0.3", "0.7", "0.5", 60, 10)
    assert x.r[0] == 0 and x.rstar[0] == 0
    assert len(x.R) == s.N and len(x.r) == s.N + 1


@pytest.mark.parametrize("pt", [("0.3", "0.7", "0.5"), ("1.1", "-1/2", "0.9")])
def test_R0_against_hypergeometric_ratio(pt):
    # R_0 = (alpha+1/2) 2F1(-beta, 1/2; alpha+1/2; k^2) / 2F1(-beta, 1/2; alpha+3/2; k^2)
    s = sequence(*pt, 60, 6)
    x = aux(*pt, 60, 6)
    with mpmath.workdps(80):
        a, b, q = Params(*pt).mp()
        h = mpf(1) / 2
        ref = (a + h) * hyp2f1(-b, h, a + h, q, s.ctx) / hyp2f1(-b, h, a + 3 * h, q, s.ctx)
        assert close(x.R[0], ref, 55)


def test_aux_two_routes():
    s = sequence("0.3", "0.7", "0.5", 40, 8)
    x = aux("0.3", "0.7", "0.5", 40, 8)
    with mpmath.workdps(60):
        for n in (0, 3, 7):
            R, r, Rs, rs = opseq.aux_from_integrals(s, n)
            assert close(R, x.R[n], 35)
            assert close(r, x.r[n], 35)
            assert close(Rs, x.Rstar[n], 35)
            assert close(rs, x.rstar[n], 35)
            assert close(r + rs, -mpf(n) / 2, 35)


def test_aux_domain():
    with pytest.raises(DomainError):
        opseq.aux_from_sequence(sequence("0.3", "0.7", 0, 50, 4))
    with pytest.raises(DomainError):
        opseq.aux_from_integrals(sequence(0, "0.7", "0.5", 50, 4), 1)


def test_alpha_zero_limit_of_R():
    x = aux(0, 0, "0.5", 60, 6)
    with mpmath.workdps(80):
        for n in range(6):
            assert close(x.R[n], n + mpf(1) / 2, 55)


def test_eval_poly():
    s = sequence(0, 0, "0.5", 50, 8)
    assert opseq.eval_poly(s, 0, "0.3") == 1
    assert opseq.eval_poly(s, 5, 0) == 0
    with mpmath.workdps(70):
        x = mpf("0.37")
        lhs = opseq.eval_poly(s, 6, x)
        rhs = x * opseq.eval_poly(s, 5, x) - s.beta[5] * opseq.eval_poly(s, 4, x)
        assert close(lhs, rhs, 48)
        d = opseq.eval_poly(s, 4, x, 1)
        # monic Legendre P_4 = x^4 - 6/7 x^2 + 3/35
        assert close(d, 4 * x**3 - 12 * x / 7, 48)
        assert close(opseq.eval_poly(s, 4, x, 2), 12 * x**2 - mpf(12) / 7, 48)


def test_shifted_sequence_is_jacobi_at_ksq_zero():
    # x^a (1-x)^b on [0,1]: h_0 = B(a+1, b+1)
    s = opseq.build_sequence(ShiftedParams("-1/2", "0.3", "0.7", 0, 50), 4)
    with mpmath.workdps(70):
        assert close(s.h[0], mpmath.beta(mpf(1) / 2, mpf("1.3")), 48)
        assert any(v != 0 for v in s.alpha_rec)


def test_orthogonality_by_quadrature():
    from elliptic_op.specialfn import quad_de

    s = sequence("0.3", "0.7", "0.5", 60, 6)
    p = Params("0.3", "0.7", "0.5", 60)
    with mpmath.workdps(80):
        def w(lo, hi, x):
            return (lo * hi) ** mpf("0.3") * (1 - x * x / 2) ** mpf("0.7")

        # shifted by the weight so that the integral is not zero
        mixed = quad_de(lambda x, lo, hi: (opseq.eval_poly(s, 2, x) * opseq.eval_poly(s, 4, x) + 1) * w(lo, hi, x),
                        -1, 1, p.ctx, distances=True)
        assert close(mixed, s.h[0], 55)
        norm = quad_de(lambda x, lo, hi: opseq.eval_poly(s, 5, x) ** 2 * w(lo, hi, x), -1, 1, p.ctx, distances=True)
        assert close(norm, s.h[5], 55)

from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from elliptic_op import moments as M
from elliptic_op.errors import DomainError
from elliptic_op.specialfn import PrecisionContext, quad_de


def close(x, y, digits):
    return abs(x - y) <= mpf(10) ** -digits * max(abs(y), 1)


def test_params_are_exact():
    p = M.Params("0.3", 0.7, "1/2")
    assert p.alpha == Fraction(3, 10)
    assert p.beta == Fraction(7, 10)
    assert p.ksq == Fraction(1, 2)


@pytest.mark.parametrize("bad", [("-1", "0", "0.5"), ("0", "0", "1.5"), ("-0.6", "-0.5", "1")])
def test_params_domain(bad):
    with pytest.raises(DomainError):
        M.Params(*bad)


def test_trivial_moments():
    p = M.Params(0, 0, "0.4", 50)
    assert M.moment_sym(0, p) == 2
    assert M.moment_sym(1, M.Params("0.3", "0.7", "0.5")) == 0
    tab = M.build_table(1, p)
    with mpmath.workdps(60):
        assert close(tab[2], mpf(2) / 3, 48)


def test_odd_entries_exactly_zero():
    tab = M.build_table(6, M.Params("0.3", "0.7", "0.5"))
    assert all(tab[j] == 0 for j in range(1, 13, 2))
    assert tab.kind == "Symmetric" and tab.N == 6


def test_moment_against_quadrature():
    p = M.Params("0.3", "0.7", "0.5", 60)
    with mpmath.workdps(80):
        f = lambda x, lo, hi: x**4 * (lo * hi) ** mpf("0.3") * (1 - x * x / 2) ** mpf("0.7")  # noqa: E731
        assert close(M.moment_sym(4, p), quad_de(f, -1, 1, p.ctx, distances=True), 55)


def test_rees_mass_is_complete_elliptic_integral():
    tab = M.build_table(5, M.Params("-1/2", "-1/2", "1/2", 60))
    with mpmath.workdps(80):
        assert close(tab[0], 2 * mpmath.ellipk(mpf(1) / 2), 55)


def test_ksq_endpoints():
    with mpmath.workdps(70):
        p0 = M.Params("0.3", "0.7", 0, 50)
        assert close(M.moment_sym(2, p0), mpmath.beta(mpf(3) / 2, mpf("1.3")), 45)
        p1 = M.Params("0.3", "0.7", 1, 50)
        assert close(M.moment_sym(2, p1), mpmath.beta(mpf(3) / 2, mpf(2)), 45)


def test_shifted_moments():
    ctx = PrecisionContext(60)
    assert M.moment_shifted(0, 0, 0, 0, "0.5", ctx) == 1
    with mpmath.workdps(80):
        assert close(M.moment_shifted(3, "0.4", "1.2", 0, "0.5", ctx), mpmath.beta(mpf("4.4"), mpf("2.2")), 55)
        f = lambda x, lo, hi: x * lo ** mpf("-0.5") * hi ** mpf("0.3") * (1 - x / 2) ** mpf("0.7")  # noqa: E731
        ref = quad_de(f, 0, 1, ctx, distances=True)
        assert close(M.moment_shifted(1, "-1/2", "0.3", "0.7", "0.5", ctx), ref, 55)


def test_moment_grid_against_quadrature():
    # a coarse version of the acceptance grid; the full grid runs in test_acceptance
    for alpha, beta, ksq in [("-1/2", "0.7", "0.9"), ("1.1", "-1/2", "0.1")]:
        p = M.Params(alpha, beta, ksq, 60)
        with mpmath.workdps(80):
            a, b, q = (mpf(Fraction(v).numerator) / Fraction(v).denominator for v in (alpha, beta, ksq))
            for j in (0, 6, 20):
                f = lambda x, lo, hi: x**j * (lo * hi) ** a * (1 - q * x * x) ** b  # noqa: E731
                assert close(M.moment_sym(j, p), quad_de(f, -1, 1, p.ctx, distances=True), 55)


def test_negative_index_rejected():
    with pytest.raises(DomainError):
        M.moment_sym(-1, M.Params(0, 0, "0.5"))
    with pytest.raises(DomainError):
        M.build_table(0, M.Params(0, 0, "0.5"))

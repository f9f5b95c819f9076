from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from elliptic_op import evolution as E
from elliptic_op import opseq
from elliptic_op.errors import DomainError, StepTooLarge
from elliptic_op.moments import Params, ShiftedParams

from conftest import GENERIC


@pytest.fixture(scope="module")
def grid():
    return E.build_grid(Params(*GENERIC, 80), 8)


@pytest.fixture(scope="module")
def shifted_grids():
    out = {}
    for a in ("-1/2", "1/2"):
        out[a] = E.build_grid(ShiftedParams(a, "0.3", "0.7", "0.5", 80), 5, stencil=9)
    return out


def test_grid_nodes_are_exact(grid):
    assert grid.center == Fraction(1, 2)
    assert all(isinstance(x, Fraction) for x in grid.nodes)
    assert grid.nodes[2] - grid.nodes[1] == grid.h
    assert len(grid.sequences) == 5


def test_polynomial_derivatives(grid):
    with mpmath.workdps(100):
        vals = [mpf(x.numerator) ** 2 / mpf(x.denominator) ** 2 for x in grid.nodes]
        d = E.d_dksq(grid, vals, 2)
        assert abs(d[1] - 1) < mpf(10) ** -40
        assert abs(d[2] - 2) < mpf(10) ** -20


def test_constant_mass_has_zero_derivative():
    g = E.build_grid(Params(0, 0, "0.5", 60), 3)
    d = E.d_dksq(g, [mpmath.log(s.h[0]) for s in g.sequences], 1)
    assert d[1] == 0


def test_grid_rejects_bad_input():
    with pytest.raises(DomainError):
        E.build_grid(Params(*GENERIC), 4, stencil=4)
    with pytest.raises(DomainError):
        E.build_grid(Params("0.3", "0.7", "0.999"), 4, h=Fraction(1, 100))
    g = E.build_grid(Params(*GENERIC, 60), 4)
    with pytest.raises(DomainError):
        E.d_dksq(g, [1, 2, 3], 1)
    with pytest.raises(DomainError):
        E.d_dksq(g, [mpf(1)] * 5, 3)


def test_step_too_large():
    g = E.build_grid(Params(*GENERIC, 60), 4, h=Fraction(1, 20))
    with pytest.raises(StepTooLarge):
        E.d_dksq(g, [mpmath.log(s.h[3]) for s in g.sequences], 2)


def test_toda_and_H(grid):
    for n in range(1, 7):
        r1, r2 = E.toda_check(grid, n)
        assert r1.relative < mpf(10) ** -25 and r2.relative < mpf(10) ** -25
        assert r1.diff_error is not None
        assert E.H_n_check(grid, n).relative < mpf(10) ** -25
    with pytest.raises(IndexError):
        E.toda_check(grid, 7)


def test_toda_alpha_zero():
    g = E.build_grid(Params(0, "0.7", "0.5", 60), 6)
    for n in range(1, 5):
        assert all(r.passed for r in E.toda_check(g, n))


def test_H_edge_and_small_ksq(grid):
    s = grid.mid
    with s.ctx.workdps():
        a, b, q = s.params.mp()
        ref = -q * (a + b + mpf(3) / 2) * s.p1[2] - q / 2
        assert abs(E.H_n_from_p1(s, 1) - ref) < mpf(10) ** -70
    s0 = opseq.build_sequence(Params("0.3", "0.7", 0, 50), 4)
    assert all(E.H_n_from_p1(s0, n) == 0 for n in range(4))


def test_halving_h_improves_toda():
    p = Params(*GENERIC, 40)
    res = []
    for h in (Fraction(1, 100), Fraction(1, 200), Fraction(1, 400)):
        g = E.build_grid(p, 6, h=h, max_defect=mpf(1))
        res.append(E.H_n_check(g, 4).relative)
    assert res[0] / res[1] >= 4 and res[1] / res[2] >= 4


def test_split_identities():
    reps = E.split_check(Params(*GENERIC, 60), 12)
    names = {r.name for r in reps}
    assert len(names) == 10
    assert all(r.passed for r in reps)
    with pytest.raises(DomainError):
        E.split_check(Params(*GENERIC[:2], 1), 6)


def test_nus():
    with mpmath.workdps(50):
        b, n = mpf("0.7"), 3
        nu = E.sigma_nus(n, "-1/2", b, "0.3")
        h = mpf(1) / 2
        assert nu == ((b + h) / 2, (b - h) / 2, (2 * n - h + b) / 2, (2 * n - h + 2 * mpf("0.3") + b) / 2)


def test_sigma_form(shifted_grids):
    for a, g in shifted_grids.items():
        for n in range(1, 5):
            r = E.sigma_form_residual(E.sigma_eval(g, n))
            assert r.relative < mpf(10) ** -20, (a, n)


def test_sigma_form_affine_case():
    g = E.build_grid(ShiftedParams("-1/2", "0.3", 0, "0.4", 60), 4, stencil=9)
    for n in range(1, 4):
        s = E.sigma_eval(g, n)
        assert s.sigma2 == 0 and s.sigma1 == s.d1
        # every term vanishes on its own; only working-precision rounding is left
        assert E.sigma_form_residual(s).relative < mpf(10) ** -70


def test_sigma_needs_shifted_grid(grid):
    with pytest.raises(DomainError):
        E.sigma_eval(grid, 2)


def test_theorem_1_8(shifted_grids):
    seq = opseq.build_sequence(Params(*GENERIC, 80), 9)
    for n in range(1, 5):
        even, odd = E.thm_1_8_check(seq, n, shifted_grids["-1/2"], shifted_grids["1/2"])
        assert even.relative < mpf(10) ** -20 and odd.relative < mpf(10) ** -20


def test_theorem_1_8_beta_zero():
    p = Params("0.3", 0, "0.5", 60)
    lo = E.build_grid(ShiftedParams("-1/2", "0.3", 0, "0.5", 60), 4, stencil=9)
    hi = E.build_grid(ShiftedParams("1/2", "0.3", 0, "0.5", 60), 4, stencil=9)
    seq = opseq.build_sequence(p, 7)
    for n in range(1, 4):
        even, odd = E.thm_1_8_check(seq, n, lo, hi)
        assert even.relative < mpf(10) ** -40 and odd.relative < mpf(10) ** -40

"""Dependence on k^2: Toda relations, H_n, even/odd splitting and the sigma form.

Derivatives in k^2 are taken numerically.  A :class:`KGrid` holds exact
sequences at equally spaced k^2 nodes (exact rationals, common N and
digits); :func:`d_dksq` applies central differences at steps h, 2h, 4h, ...
and Richardson-extrapolates them.  Errors of the node sequences are
correlated across the grid, so differences of log h_n and log D_n lose far
less than the worst-case ``ulp / h^k`` bound suggests.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

import mpmath
from mpmath import mpf

from .diffeq import ResidualReport, report
from .errors import DomainError, StepTooLarge
from .moments import Params, ShiftedParams, exact
from .opseq import OPSequence, aux_from_sequence, build_sequence, required_digits
from .specialfn import PrecisionContext, to_real

__all__ = [
    "KGrid",
    "Derivatives",
    "SigmaData",
    "build_grid",
    "d_dksq",
    "toda_check",
    "H_n_from_p1",
    "H_n_check",
    "split_check",
    "sigma_eval",
    "sigma_nus",
    "sigma_form_residual",
    "thm_1_8_check",
]


@dataclass(frozen=True)
class KGrid:
    """Sequences at k^2 = center + j h for j = -m..m."""

    center: Fraction
    h: Fraction
    nodes: tuple
    sequences: tuple
    max_defect: object = None

    @property
    def m(self) -> int:
        return len(self.nodes) // 2

    @property
    def mid(self) -> OPSequence:
        return self.sequences[self.m]

    @property
    def params(self):
        return self.mid.params

    @property
    def N(self) -> int:
        return self.mid.N

    @property
    def digits(self) -> int:
        return self.mid.digits


@dataclass(frozen=True)
class Derivatives:
    """f and its k^2-derivatives at the grid center, with extrapolation defects."""

    value: mpf
    d: tuple
    err: tuple

    def __getitem__(self, k):
        return self.value if k == 0 else self.d[k - 1]


@dataclass(frozen=True)
class SigmaData:
    n: int
    a: Fraction
    b: Fraction
    c: Fraction
    ksq: Fraction
    d1: mpf
    d0: mpf
    sigma: mpf
    sigma1: mpf
    sigma2: mpf
    err: tuple
    digits: int = 50


def build_grid(p: Params | ShiftedParams, N: int, h=None, stencil: int = 5, max_defect=None) -> KGrid:
    """Build sequences at ``stencil`` equally spaced k^2 values around ``p.ksq``.

    ``h`` defaults to 10^(-digits/5); it is converted to an exact rational
    so every node is an exact parameter.
    """
    if stencil < 5 or stencil % 2 == 0:
        raise DomainError("stencil must be an odd count >= 5")
    digits = required_digits(N, p.digits)
    p = p.with_digits(digits)
    h = Fraction(1, 10 ** (digits // 5)) if h is None else exact(h)
    if h <= 0:
        raise DomainError("h must be positive")
    m = stencil // 2
    center = p.ksq
    nodes = tuple(center + j * h for j in range(-m, m + 1))
    if nodes[0] <= 0 or nodes[-1] >= 1:
        raise DomainError("grid nodes must lie strictly inside (0, 1)")
    seqs = tuple(build_sequence(p.with_ksq(x), N) for x in nodes)
    return KGrid(center, h, nodes, seqs, max_defect)


def _central(f, m, s, k):
    """k-th derivative by the central formula at node step s (in units of h)."""
    if k == 1:
        return (f[m + s] - f[m - s]) / (2 * s)
    if k == 2:
        return (f[m + s] - 2 * f[m] + f[m - s]) / s**2
    if k == 3:
        return (f[m + 2 * s] - 2 * f[m + s] + 2 * f[m - s] - f[m - 2 * s]) / (2 * s**3)
    raise DomainError("derivatives of order 1..3 only")


def d_dksq(grid: KGrid, values, order: int = 2) -> Derivatives:
    """Derivatives up to ``order`` of node values ``values`` at the grid center."""
    m = grid.m
    f = list(values)
    if len(f) != len(grid.nodes):
        raise DomainError("one value per grid node is required")
    with grid.mid.ctx.workdps():
        h = to_real(grid.h)
        out, errs = [], []
        for k in range(1, order + 1):
            reach = 2 if k == 3 else 1
            steps = []
            s = 1
            while reach * s <= m:
                steps.append(s)
                s *= 2
            if len(steps) < 2:
                raise DomainError(f"order-{k} derivative needs at least {4 * reach + 1} nodes")
            table = [_central(f, m, s, k) for s in steps]
            prev = None
            level = 1
            while len(table) > 1:
                fac = mpf(4) ** level
                prev = table[0]
                table = [(fac * table[i] - table[i + 1]) / (fac - 1) for i in range(len(table) - 1)]
                level += 1
            best = table[0]
            err = abs(best - prev)
            scale = max(abs(best), max(abs(v) for v in f))
            limit = grid.max_defect
            if limit is None:
                limit = mpf(10) ** (-(grid.digits / 4))
            if err > limit * scale:
                raise StepTooLarge(f"order-{k} extrapolation defect {mpmath.nstr(err, 3)} too large; reduce h")
            out.append(best / h**k)
            errs.append(err / h**k)
        return Derivatives(f[m], tuple(out), tuple(errs))


# ---------------------------------------------------------------------------
# Toda relations and H_n
# ---------------------------------------------------------------------------


def toda_check(grid: KGrid, n: int, tol=None):
    """(log h_n relation, log beta_n relation) checked against the ladder variable R_n."""
    if not 1 <= n <= grid.N - 2:
        raise IndexError(f"need 1 <= n <= N-2, got {n}")
    seq = grid.mid
    aux = aux_from_sequence(seq)
    with seq.ctx.workdps():
        if tol is None:
            tol = mpf(10) ** -25
        a, b, q = seq.params.mp()
        dh = d_dksq(grid, [mpmath.log(s.h[n]) for s in grid.sequences], 1)
        db = d_dksq(grid, [mpmath.log(s.beta[n]) for s in grid.sequences], 1)
        R = aux.R
        r1 = report("toda.log_h", n, [q * dh[1], -R[n], n + a + mpf(1) / 2], tol)
        r2 = report("toda.log_beta", n, [q * db[1], -R[n], R[n - 1], mpf(1)], tol)
        r1 = replace(r1, diff_error=q * dh.err[0])
        r2 = replace(r2, diff_error=q * db.err[0])
    return r1, r2


def _H_terms(seq: OPSequence, n: int):
    a, b, q = seq.params.mp()
    s = a + b + n
    return [-q * (s - mpf(1) / 2) * seq.p1[n], -q * (s + mpf(1) / 2) * seq.p1[n + 1], -mpf(n * n) * q / 2]


def H_n_from_p1(seq: OPSequence, n: int):
    """k^2 (k^2-1) d/dk^2 log D_n written through p1(n) and p1(n+1)."""
    if not 0 <= n <= seq.N:
        raise IndexError(f"need 0 <= n <= N, got {n}")
    with seq.ctx.workdps():
        return mpmath.fsum(_H_terms(seq, n))


def H_n_check(grid: KGrid, n: int, tol=None) -> ResidualReport:
    if not 1 <= n <= grid.N:
        raise IndexError(f"need 1 <= n <= N, got {n}")
    seq = grid.mid
    with seq.ctx.workdps():
        if tol is None:
            tol = mpf(10) ** -25
        q = to_real(grid.center)
        dD = d_dksq(grid, [s.log_D(n) for s in grid.sequences], 1)
        terms = [q * (q - 1) * dD[1]] + [-t for t in _H_terms(seq, n)]
        return replace(report("toda.H_n", n, terms, tol), diff_error=abs(q * (q - 1)) * dD.err[0])


# ---------------------------------------------------------------------------
# even/odd splitting
# ---------------------------------------------------------------------------


def _split_sequences(p: Params, N: int):
    M = (N + 1) // 2 + 1
    digits = max(required_digits(N, p.digits), required_digits(M, p.digits))
    p = p.with_digits(digits)
    seq = build_sequence(p, N)
    lo = build_sequence(ShiftedParams(Fraction(-1, 2), p.alpha, p.beta, p.ksq, digits), M)
    hi = build_sequence(ShiftedParams(Fraction(1, 2), p.alpha, p.beta, p.ksq, digits), M)
    return seq, lo, hi


def split_check(p: Params, N: int, tol=None):
    """Identify the even and odd halves of the sequence with the two shifted weights.

    The sub-leading coefficient of P_{2n}(x) = Q_n(x^2) sits at x^{2n-2},
    i.e. it is the x^{n-1} coefficient of Q_n.
    """
    if not 0 <= p.ksq < 1:
        raise DomainError("splitting needs 0 <= ksq < 1")
    seq, lo, hi = _split_sequences(p, N)
    out = []
    with seq.ctx.workdps():
        if tol is None:
            tol = mpf(10) ** (-(p.digits - 15))
        B, h = seq.beta, seq.h
        for n in range(0, N // 2 + 1):
            if 2 * n <= N:
                out.append(report("split.h_even", n, [h[2 * n], -lo.h[n]], tol))
                out.append(report("split.p1_even", n, [seq.p1[2 * n], -lo.q1[n]], tol) if n else None)
                out.append(report("split.logD_even", n,
                                  [seq.log_D(2 * n), -lo.log_D(n), -hi.log_D(n)], tol) if n else None)
            if 2 * n + 1 <= N:
                out.append(report("split.alpha_hat", n, [B[2 * n + 1], B[2 * n], -lo.alpha_rec[n]], tol))
                out.append(report("split.h_odd", n, [h[2 * n + 1], -hi.h[n]], tol))
                out.append(report("split.p1_odd", n, [seq.p1[2 * n + 1], -hi.q1[n]], tol) if n else None)
                out.append(report("split.logD_odd", n,
                                  [seq.log_D(2 * n + 1), -lo.log_D(n + 1), -hi.log_D(n)], tol))
            if 1 <= n and 2 * n <= N:
                out.append(report("split.beta_hat", n, [B[2 * n] * B[2 * n - 1], -lo.beta[n]], tol))
            if 1 <= n and 2 * n + 1 <= N:
                out.append(report("split.beta_bar", n, [B[2 * n + 1] * B[2 * n], -hi.beta[n]], tol))
            if 2 * n + 2 <= N:
                out.append(report("split.alpha_bar", n, [B[2 * n + 2], B[2 * n + 1], -hi.alpha_rec[n]], tol))
    return [r for r in out if r is not None]


# ---------------------------------------------------------------------------
# sigma form
# ---------------------------------------------------------------------------


def _d_coeffs(n, a, b, c):
    d1 = -n * c - (a + c) ** 2 / 4
    d0 = -mpf(n) * (n + a + b) / 2 + c * (2 * n + a + b + c) / 4 - a * b / 4
    return d1, d0


def sigma_nus(n: int, a, c, b):
    a, b, c = to_real(a), to_real(b), to_real(c)
    return ((c - a) / 2, (c + a) / 2, (2 * n + a + c) / 2, (2 * n + a + 2 * b + c) / 2)


def sigma_eval(grid: KGrid, n: int) -> SigmaData:
    """sigma = k^2(k^2-1) d/dk^2 log D_n + d_1 k^2 + d_0 and its first two derivatives."""
    p = grid.params
    if not isinstance(p, ShiftedParams):
        raise DomainError("sigma is defined on the shifted weight")
    if not 1 <= n <= grid.N:
        raise IndexError(f"need 1 <= n <= N, got {n}")
    with grid.mid.ctx.workdps():
        a, b, c, _ = p.mp()
        q = to_real(grid.center)
        L = d_dksq(grid, [s.log_D(n) for s in grid.sequences], 3)
        d1, d0 = _d_coeffs(n, a, b, c)
        sig = q * (q - 1) * L[1] + d1 * q + d0
        sig1 = (2 * q - 1) * L[1] + q * (q - 1) * L[2] + d1
        sig2 = 2 * L[1] + 2 * (2 * q - 1) * L[2] + q * (q - 1) * L[3]
        return SigmaData(n, p.a, p.b, p.c, grid.center, d1, d0, sig, sig1, sig2, L.err, grid.digits)


def sigma_form_residual(s: SigmaData, tol=None) -> ResidualReport:
    """Jimbo-Miwa-Okamoto sigma form with the parameters nu_1..nu_4."""
    with PrecisionContext(s.digits).workdps():
        if tol is None:
            tol = mpf(10) ** -20
        q = to_real(s.ksq)
        nu = sigma_nus(s.n, s.a, s.c, s.b)
        prod_nu = nu[0] * nu[1] * nu[2] * nu[3]
        t1 = s.sigma1 * (q * (q - 1) * s.sigma2) ** 2
        inner = [2 * q * s.sigma1**2, -2 * s.sigma1 * s.sigma, -s.sigma1**2, -prod_nu]
        t2 = mpmath.fsum(inner) ** 2
        t3 = -mpmath.fprod(v * v + s.sigma1 for v in nu)
        # squares and products are scaled by their factors, so that a term
        # whose factors cancel exactly does not set the scale by its rounding
        scale = max(abs(t1), max(abs(u) for u in inner) ** 2,
                    mpmath.fprod(max(v * v, abs(s.sigma1)) for v in nu))
        total = abs(t1 + t2 + t3)
        rel = total / scale if scale else mpf(0)
        return ResidualReport(f"sigma_form[a={s.a}]", s.n, total, rel, bool(rel < tol), tol, max(s.err))


def thm_1_8_check(seq: OPSequence, n: int, lo_grid: KGrid, hi_grid: KGrid, tol=None):
    """H_{2n} and H_{2n+1} of the symmetric weight against sums of two sigma functions.

    ``lo_grid`` and ``hi_grid`` are grids of the shifted weights with
    a = -1/2 and a = +1/2 (b = alpha, c = beta) centred at the same k^2.
    The sigma for (n, a = +1/2) enters both relations and is evaluated once.
    """
    p = seq.params
    if 2 * n + 1 > seq.N:
        raise IndexError(f"need 2n+1 <= N, got n={n}, N={seq.N}")
    with seq.ctx.workdps():
        if tol is None:
            tol = mpf(10) ** -20
        a, b, q = p.mp()
        s_lo_n = sigma_eval(lo_grid, n)
        s_lo_n1 = sigma_eval(lo_grid, n + 1)
        s_hi_n = sigma_eval(hi_grid, n)
        H_even = H_n_from_p1(seq, 2 * n)
        H_odd = H_n_from_p1(seq, 2 * n + 1)
        even = report("thm1.8.even", n, [
            H_even, -s_lo_n.sigma, -s_hi_n.sigma,
            -(b * b / 2 + 2 * n * b + mpf(1) / 8) * q,
            b / 2 * (2 * n + a + b), -mpf(n) * (n + a)], tol)
        odd = report("thm1.8.odd", n, [
            H_odd, -s_lo_n1.sigma, -s_hi_n.sigma,
            -(b * b / 2 + (2 * n + 1) * b + mpf(1) / 8) * q,
            b / 2 * (2 * n + 1 + a + b), -mpf(2 * n + 1) * (2 * n + 1 + 2 * a) / 4], tol)
    return even, odd

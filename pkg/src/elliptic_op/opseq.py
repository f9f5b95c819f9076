"""Monic orthogonal polynomials, recurrence data and ladder variables.

The Hankel moment matrix ``(mu_{i+j})`` is factored as ``L D L^T`` without
pivoting.  The pivots are the squared norms ``h_n`` and the rows of
``L^{-1}`` are the monic coefficient vectors; both are produced by one
Gram-Schmidt sweep over the monomials in the moment inner product.

The factorization of a Hankel matrix on a finite interval cancels about
0.7 digits per row.  :func:`build_sequence` raises the target to
``30 + ceil(2.2 N)`` digits when the caller asks for less, and works with
guard digits that grow with N so the target digits survive the
cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpf

from .errors import DomainError, PrecisionExhausted
from .moments import MomentTable, Params, ShiftedParams, build_table
from .specialfn import PrecisionContext, quad_de, to_real

__all__ = [
    "OPSequence",
    "AuxVars",
    "required_digits",
    "guard_digits",
    "from_moments",
    "build_sequence",
    "aux_from_sequence",
    "aux_from_integrals",
    "eval_poly",
]


def required_digits(N: int, digits: int = 0) -> int:
    """Working digits for a sequence up to index N."""
    return max(int(digits), 30 + -(-11 * int(N) // 5))


@dataclass(frozen=True)
class OPSequence:
    """Recurrence data of one weight, indexed directly by n.

    Attributes
    ----------
    h : tuple
        ``h[n]`` for n = 0..N.
    D : tuple
        Hankel determinants ``D[n]`` for n = 0..N+1, ``D[0] = 1``.
    beta : tuple
        ``beta[n]`` for n = 0..N with ``beta[0] = 0``.
    alpha_rec : tuple
        Diagonal recurrence coefficients (zeros for symmetric weights).
    q1, p1 : tuple
        Coefficients of ``x^{n-1}`` and ``x^{n-2}`` in ``P_n``, n = 0..N+1.
    coeffs : tuple
        ``coeffs[n][i]`` is the coefficient of ``x^i`` in ``P_n``.
    """

    params: Params | ShiftedParams
    N: int
    h: tuple = field(repr=False)
    D: tuple = field(repr=False)
    beta: tuple = field(repr=False)
    alpha_rec: tuple = field(repr=False)
    q1: tuple = field(repr=False)
    p1: tuple = field(repr=False)
    coeffs: tuple = field(repr=False)

    @property
    def ctx(self) -> PrecisionContext:
        return self.params.ctx

    @property
    def digits(self) -> int:
        return self.params.digits

    @property
    def symmetric(self) -> bool:
        return self.params.symmetric

    def beta_from_D(self, n: int):
        """``D_{n+1} D_{n-1} / D_n^2``, the determinant route to beta_n."""
        if not 1 <= n <= self.N:
            raise IndexError(n)
        with self.ctx.workdps():
            return self.D[n + 1] * self.D[n - 1] / self.D[n] ** 2

    def log_D(self, n: int):
        with self.ctx.workdps():
            return mpmath.fsum(mpmath.log(self.h[j]) for j in range(n))


@dataclass(frozen=True)
class AuxVars:
    """Ladder variables; ``R`` and ``Rstar`` stop at N-1, ``r`` and ``rstar`` at N."""

    R: tuple
    r: tuple
    Rstar: tuple
    rstar: tuple


def _rows(mu, nrows, symmetric, work):
    """Gram-Schmidt of 1, x, ..., x^{nrows-1}; returns (rows, norms, losses)."""
    rows = []
    h = []
    loss = []
    for n in range(nrows):
        c = [mpf(0)] * n + [mpf(1)]
        start = n % 2 if symmetric else 0
        step = 2 if symmetric else 1
        for m in range(start, n, step):
            # <x^n, P_m> / h_m
            rm = rows[m]
            s = mpmath.fdot((rm[i], mu[n + i]) for i in range(m % 2 if symmetric else 0, m + 1, step))
            f = s / h[m]
            for i in range(m % 2 if symmetric else 0, m + 1, step):
                c[i] -= f * rm[i]
        if 2 * n < len(mu):
            terms = [c[i] * mu[n + i] for i in range(start, n + 1, step)]
            hn = mpmath.fsum(terms)
            big = max(abs(t) for t in terms)
            if hn <= 0:
                raise PrecisionExhausted(
                    f"h_{n} = {mpmath.nstr(hn, 5)} is not positive at {mp.dps} digits")
            lost = float(mpmath.log10(big / hn))
            if lost >= work:
                raise PrecisionExhausted(f"h_{n} lost all {work} working digits")
            h.append(hn)
            loss.append(lost)
        rows.append(c)
    return rows, h, loss


def from_moments(table: MomentTable, N: int) -> OPSequence:
    """Factor the moment matrix of ``table`` up to index N."""
    N = int(N)
    if N < 1 or 2 * N >= len(table.mu):
        raise DomainError(f"table covers N <= {table.N}, requested {N}")
    p = table.params
    sym = p.symmetric
    ctx = p.ctx
    with ctx.workdps():
        mu = table.mu
        # row N+1 needs mu_{2N+1}, which is zero for symmetric weights
        extra = sym or len(mu) > 2 * N + 1
        if sym and len(mu) == 2 * N + 1:
            mu = tuple(mu) + (mpf(0),)
        rows, h, _ = _rows(mu, N + 2 if extra else N + 1, sym, ctx.working)
        h = tuple(h[: N + 1])
        D = [mpf(1)]
        for hn in h:
            D.append(D[-1] * hn)
        beta = (mpf(0),) + tuple(h[n] / h[n - 1] for n in range(1, N + 1))
        q1 = tuple(rows[n][n - 1] if n >= 1 else mpf(0) for n in range(len(rows)))
        p1 = tuple(rows[n][n - 2] if n >= 2 else mpf(0) for n in range(len(rows)))
        alpha_rec = tuple(q1[n] - q1[n + 1] for n in range(len(rows) - 1))
        coeffs = tuple(tuple(r) for r in rows)
    return OPSequence(p, N, h, tuple(D), beta, alpha_rec, q1, p1, coeffs)


def guard_digits(N: int) -> int:
    """Guard digits covering the conditioning of an (N+2)-row moment matrix.

    Rows lose about 0.7 digits each on [-1, 1]; 0.8 N keeps the requested
    digits intact through the factorization.
    """
    return 15 + -(-4 * int(N) // 5)


def build_sequence(p: Params | ShiftedParams, N: int) -> OPSequence:
    """Moments plus factorization, with the working-precision floor applied."""
    digits = required_digits(N, p.digits)
    if digits != p.digits:
        p = p.with_digits(digits)
    guard = max(p.guard, guard_digits(N))
    if guard != p.guard:
        p = p.with_guard(guard)
    table = build_table(N if p.symmetric else N + 1, p)
    return from_moments(table, N)


def _needs_interior(p):
    if not isinstance(p, Params):
        raise DomainError("ladder variables are defined for the symmetric weight")
    if p.ksq in (0, 1):
        raise DomainError("ladder variables need 0 < ksq < 1")


def aux_from_sequence(seq: OPSequence) -> AuxVars:
    """Ladder variables from beta_n and p1(n) by closed-form rearrangement."""
    p = seq.params
    _needs_interior(p)
    N = seq.N
    with seq.ctx.workdps():
        al, bt, q = p.mp()
        k = mpmath.sqrt(q)
        s = al + bt
        B, P1 = seq.beta, seq.p1
        r = []
        for n in range(N + 1):
            v = (mpf(n) / 2 - q * (s + n + mpf(1) / 2) * B[n] + q * P1[n]) / (q - 1)
            r.append(v)
        R = []
        for n in range(N):
            v = al - (n + mpf(1) / 2 - q * (s + n + mpf(3) / 2) * (B[n] + B[n + 1])
                      + 2 * q * P1[n]) / (q - 1)
            R.append(v)
        rstar = [-mpf(n) / 2 - r[n] for n in range(N + 1)]
        Rstar = [k * (s + n + mpf(1) / 2 - R[n]) for n in range(N)]
    return AuxVars(tuple(R), tuple(r), tuple(Rstar), tuple(rstar))


def eval_poly(seq: OPSequence, n: int, x, deriv: int = 0):
    """P_n(x) or its first or second derivative, by Horner's rule."""
    if not 0 <= n < len(seq.coeffs):
        raise IndexError(f"P_{n} not available (N = {seq.N})")
    if deriv not in (0, 1, 2):
        raise DomainError("deriv must be 0, 1 or 2")
    c = seq.coeffs[n]
    with seq.ctx.workdps():
        x = to_real(x)
        acc = mpf(0)
        for i in range(n, deriv - 1, -1):
            w = c[i]
            for t in range(deriv):
                w *= i - t
            acc = acc * x + w
        return acc


def aux_from_integrals(seq: OPSequence, n: int):
    """(R_n, r_n, R*_n, r*_n) from their defining integrals by quadrature.

    The ``1/(1+y)`` kernels are only integrable for ``alpha > 0``; the
    ``alpha / (1+y)`` combination has no limit as alpha -> 0 because the
    integral diverges like 1/alpha.
    """
    p = seq.params
    _needs_interior(p)
    if not 0 <= n <= seq.N - 1:
        raise IndexError(n)
    if p.alpha <= 0:
        raise DomainError("integral route needs alpha > 0")
    ctx = seq.ctx
    with ctx.workdps():
        al, bt, q = p.mp()
        k = mpmath.sqrt(q)
        ik = 1 / k

        def integrals(x, dlo, dhi):
            # dlo = 1 + x, dhi = 1 - x exactly
            base = (dlo * dhi) ** al * (1 - q * x * x) ** bt
            pn = eval_poly(seq, n, x)
            pm = eval_poly(seq, n - 1, x) if n >= 1 else mpf(0)
            return base, pn, pm

        def quad(kernel):
            return quad_de(kernel, -1, 1, ctx, distances=True)

        def k_R(x, a, b):
            w, pn, _ = integrals(x, a, b)
            return w * pn * pn / a

        def k_r(x, a, b):
            w, pn, pm = integrals(x, a, b)
            return w * pn * pm / a

        def k_Rs(x, a, b):
            w, pn, _ = integrals(x, a, b)
            return w * pn * pn / (ik + x)

        def k_rs(x, a, b):
            w, pn, pm = integrals(x, a, b)
            return w * pn * pm / (ik + x)

        h = seq.h
        R = al / h[n] * quad(k_R)
        Rs = bt / h[n] * quad(k_Rs)
        if n == 0:
            r = rs = mpf(0)
        else:
            r = al / h[n - 1] * quad(k_r)
            rs = bt / h[n - 1] * quad(k_rs)
        return R, r, Rs, rs

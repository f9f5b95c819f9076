"""Arbitrary-precision special functions and double-exponential quadrature.

Every routine works on :class:`mpmath.mpf` values.  Precision is carried by
an immutable :class:`PrecisionContext`; each operation raises the mpmath
working precision to ``digits + guard`` for its own duration and returns a
value accurate to ``digits`` significant digits.

The Gamma and Barnes G functions share one mechanism: an asymptotic
series evaluated at a shifted argument followed by a downward recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import mpmath
from mpmath import mp, mpf

from .errors import DomainError, NoConvergence, PoleError

__all__ = [
    "PrecisionContext",
    "to_real",
    "gamma",
    "loggamma",
    "hyp2f1",
    "hyp2f1_series",
    "SeriesResult",
    "barnes_g",
    "log_barnes_g",
    "quad_de",
]


@dataclass(frozen=True)
class PrecisionContext:
    """Target accuracy (``digits``) plus internal guard digits."""

    digits: int = 50
    guard: int = 15

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 30:
            raise DomainError(f"digits must be an integer >= 30, got {self.digits!r}")
        if self.guard < 0:
            raise DomainError(f"guard must be non-negative, got {self.guard!r}")

    @property
    def working(self) -> int:
        return self.digits + self.guard

    def workdps(self, extra: int = 0):
        """Context manager raising mpmath's precision to the working level."""
        return mp.workdps(self.working + extra)

    def eps(self):
        return mpf(10) ** (-self.working)

    def scaled(self, factor: int) -> "PrecisionContext":
        return PrecisionContext(self.digits * factor, self.guard)


_DEFAULT = PrecisionContext()


def _ctx(ctx):
    return _DEFAULT if ctx is None else ctx


def to_real(x):
    """Convert ``x`` to an mpf at the current precision.

    Decimal strings and :class:`~fractions.Fraction` are converted exactly
    (no binary round trip); floats go through their shortest repr.
    """
    if isinstance(x, mpf):
        return +x
    if isinstance(x, bool):
        raise TypeError("bool is not a real parameter")
    if isinstance(x, int):
        return mpf(x)
    if isinstance(x, float):
        x = Fraction(repr(x))
    elif isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_fraction(k: int) -> Fraction:
    q = mpmath.bernfrac(k)
    return Fraction(int(q[0]), int(q[1]))


def _bern(k: int):
    q = _bernoulli_fraction(k)
    return mpf(q.numerator) / q.denominator


def _stirling_loggamma(z, tol):
    """log Gamma(z) for large positive z from the Stirling series."""
    s = (z - mpf(0.5)) * mpmath.log(z) - z + mpmath.log(2 * mpmath.pi) / 2
    zz = z * z
    zp = z
    k = 1
    while True:
        term = _bern(2 * k) / ((2 * k) * (2 * k - 1) * zp)
        s += term
        if abs(term) < tol:
            return s
        zp *= zz
        k += 1
        if k > 10 * mp.dps + 100:
            raise NoConvergence("Stirling series did not reach tolerance")


def _loggamma_positive(x):
    dps = mp.dps
    tol = mpf(10) ** (-(dps + 5))
    z0 = int(0.4 * dps) + 10
    m = max(0, math.ceil(z0 - float(x)))
    with mp.workdps(dps + 10):
        z = x + m
        s = _stirling_loggamma(z, tol)
        if m:
            prod = mpf(1)
            for i in range(m):
                prod *= x + i
            s -= mpmath.log(prod)
    return +s


def _check_gamma_arg(x):
    if x <= 0 and x == mpmath.floor(x):
        raise PoleError(f"Gamma has a pole at {mpmath.nstr(x, 10)}")


def loggamma(x, ctx: PrecisionContext | None = None):
    """log|Gamma(x)| for real x off the non-positive integers."""
    ctx = _ctx(ctx)
    with ctx.workdps():
        x = to_real(x)
        _check_gamma_arg(x)
        if x > 0:
            return _loggamma_positive(x)
        with mp.workdps(mp.dps + 10):
            s = mpmath.sinpi(x)
            v = mpmath.log(mpmath.pi / abs(s)) - _loggamma_positive(1 - x)
        return +v


def gamma(x, ctx: PrecisionContext | None = None):
    """Gamma(x) for real x; raises :class:`PoleError` at 0, -1, -2, ..."""
    ctx = _ctx(ctx)
    with ctx.workdps():
        x = to_real(x)
        _check_gamma_arg(x)
        if x > 0:
            return mpmath.exp(_loggamma_positive(x))
        # reflection
        with mp.workdps(mp.dps + 10):
            v = mpmath.pi / (mpmath.sinpi(x) * mpmath.exp(_loggamma_positive(1 - x)))
        return +v


# ---------------------------------------------------------------------------
# Gauss hypergeometric series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesResult:
    value: mpf
    tail_bound: mpf
    terms: int


def _hyp2f1_sum(a, b, c, z, tol_rel):
    s = mpf(1)
    t = mpf(1)
    tmax = mpf(1)
    m = 0
    while True:
        t = t * (a + m) * (b + m) / ((c + m) * (m + 1)) * z
        m += 1
        s += t
        if t == 0:
            return s, mpf(0), m, tmax
        at = abs(t)
        if at > tmax:
            tmax = at
        # ratio majorant |t_{j+1}/t_j| <= z (1+|a-1|/(j+1)) (1+|b-c|/(c+j)),
        # decreasing in j once c + j > 0
        if c + m > 0:
            rho = abs(z) * (1 + abs(a - 1) / (m + 1)) * (1 + abs(b - c) / (c + m))
            if rho < 1:
                tail = at * rho / (1 - rho)
                if tail <= tol_rel * abs(s):
                    return s, tail, m, tmax
        if m > 10**7:
            raise NoConvergence("2F1 series exceeded 10^7 terms")


def hyp2f1_series(a, b, c, z, ctx: PrecisionContext | None = None) -> SeriesResult:
    """Gauss series for 2F1(a, b; c; z) with a certified tail bound.

    Summation stops once a geometric majorant of the remaining terms is
    below ``10**-(digits+guard)`` relative to the partial sum.  If the
    largest term exceeds the sum by more than the guard digits allow, the
    series is re-summed at higher precision.
    """
    ctx = _ctx(ctx)
    with ctx.workdps():
        a, b, c, z = (to_real(v) for v in (a, b, c, z))
        if c <= 0 and c == mpmath.floor(c):
            raise DomainError("2F1 undefined for c a non-positive integer")
        if abs(z) >= 1:
            raise DomainError("2F1 series requires |z| < 1")
        if z == 0:
            return SeriesResult(mpf(1), mpf(0), 0)
        extra = 0
        for _ in range(4):
            with mp.workdps(ctx.working + extra):
                tol = mpf(10) ** (-ctx.working)
                s, tail, m, tmax = _hyp2f1_sum(a, b, c, z, tol)
                if s == 0:
                    return SeriesResult(s, tail, m)
                loss = float(mpmath.log10(tmax / abs(s)))
            if loss <= ctx.guard - 3:
                return SeriesResult(+s, tail, m)
            extra = int(loss) + 10
        raise NoConvergence("2F1 cancellation could not be controlled")


def hyp2f1(a, b, c, z, ctx: PrecisionContext | None = None):
    """2F1(a, b; c; z) for real parameters and |z| < 1."""
    return hyp2f1_series(a, b, c, z, ctx).value


# ---------------------------------------------------------------------------
# Barnes G
# ---------------------------------------------------------------------------


def _log_g_series_nc(z, tol):
    """log G(z+1) minus its constant term, asymptotic in large z."""
    lz = mpmath.log(z)
    s = z * z / 2 * lz - 3 * z * z / 4 + z / 2 * mpmath.log(2 * mpmath.pi) - lz / 12
    zz = z * z
    zp = zz
    k = 1
    while True:
        term = _bern(2 * k + 2) / (4 * k * (k + 1) * zp)
        s += term
        if abs(term) < tol:
            return s
        zp *= zz
        k += 1
        if k > 10 * mp.dps + 100:
            raise NoConvergence("Barnes G series did not reach tolerance")


def _log_g_integer(n: int):
    """log G(n+1) = sum_{k<n} log k! (exact product, then log)."""
    acc = mpf(0)
    lf = mpf(0)
    for k in range(1, n):
        lf += mpmath.log(k)
        acc += lf
    return acc


@lru_cache(maxsize=64)
def _log_g_constant(dps: int, anchor: int):
    """The series constant, fixed by the exact value at an integer anchor."""
    with mp.workdps(dps):
        tol = mpf(10) ** (-(dps + 5))
        return _log_g_integer(anchor) - _log_g_series_nc(mpf(anchor), tol)


def _default_anchor(dps: int, digits: int) -> int:
    return max(int(10 * math.sqrt(digits)), int(0.4 * dps) + 10)


def log_barnes_g(z, ctx: PrecisionContext | None = None, shift_to: int | None = None):
    """log G(z) for real z > 0.

    The asymptotic series of log G(w+1) is summed at w = z + m - 1 >= the
    anchor height and brought down with G(w+1) = Gamma(w) G(w).  The
    series constant is calibrated against the exact value G(N+1) =
    prod_{k<N} k! at the integer anchor N.  ``shift_to`` overrides the
    target height for the non-integer argument (used to test shift
    independence).
    """
    ctx = _ctx(ctx)
    with ctx.workdps():
        z = to_real(z)
        if z <= 0:
            raise DomainError("barnes_g requires z > 0")
        dps = mp.dps + 10
        anchor = _default_anchor(dps, ctx.digits)
        height = anchor if shift_to is None else max(int(shift_to), anchor)
        with mp.workdps(dps):
            if z == mpmath.floor(z) and z <= 4 * height:
                return +_log_g_integer(int(z) - 1)
            tol = mpf(10) ** (-(dps + 5))
            const = _log_g_constant(dps, anchor)
            m = max(0, math.ceil(height + 1 - float(z)))
            w = z + m - 1
            lg = _log_g_series_nc(w, tol) + const
            if m:
                # sum_{i<m} log Gamma(z+i) = m log Gamma(z) + sum_{j<m-1} (m-1-j) log(z+j)
                lgz = _loggamma_positive(z)
                acc = m * lgz
                for j in range(m - 1):
                    acc += (m - 1 - j) * mpmath.log(z + j)
                lg -= acc
        return +lg


def barnes_g(z, ctx: PrecisionContext | None = None, shift_to: int | None = None):
    """Barnes G(z) for real z > 0 (see :func:`log_barnes_g`)."""
    ctx = _ctx(ctx)
    lg = log_barnes_g(z, ctx, shift_to)
    with ctx.workdps():
        return mpmath.exp(lg)


# ---------------------------------------------------------------------------
# tanh-sinh quadrature
# ---------------------------------------------------------------------------


def quad_de(
    f: Callable,
    lo,
    hi,
    ctx: PrecisionContext | None = None,
    *,
    max_level: int = 12,
    distances: bool = False,
):
    """Tanh-sinh quadrature of ``f`` over (lo, hi).

    With ``distances=True`` the integrand is called as ``f(x, x - lo, hi -
    x)`` where the two distances are computed without cancellation; use it
    for algebraic endpoint singularities, which otherwise lose half the
    digits to the rounding of ``1 - x``.

    The step starts at h = 1 and is halved until two successive levels
    agree to ``digits + 5`` digits.  Raises :class:`NoConvergence` after
    ``max_level`` halvings.
    """
    ctx = _ctx(ctx)
    with ctx.workdps(10):
        lo = to_real(lo)
        hi = to_real(hi)
        width = hi - lo
        half = width / 2
        pi2 = mpmath.pi / 2
        tiny = mpf(10) ** (-(10**6))
        target = mpf(10) ** (-(ctx.digits + 5))

        def node(t):
            u = pi2 * mpmath.sinh(t)
            e2 = mpmath.exp(-2 * abs(u))
            # distance to the near endpoint, without cancellation
            near = width * e2 / (1 + e2)
            far = width - near
            if t >= 0:
                dlo, dhi = far, near
            else:
                dlo, dhi = near, far
            ch = mpmath.cosh(u)
            wgt = half * pi2 * mpmath.cosh(t) / (ch * ch)
            return lo + dlo, dlo, dhi, wgt

        def fval(x, dlo, dhi):
            if dlo == 0 or dhi == 0:
                return mpf(0)
            return f(x, dlo, dhi) if distances else f(x)

        def level_sum(h, k0, step, scale):
            # sum over t = k h for k = k0, k0+step, ... in both directions;
            # stop after two consecutive negligible node pairs
            s = mpf(0)
            k = k0
            quiet = 0
            while True:
                t = k * h
                contrib = mpf(0)
                for sgn in ((1, -1) if t != 0 else (1,)):
                    x, dlo, dhi, wgt = node(sgn * t)
                    contrib += wgt * fval(x, dlo, dhi)
                s += contrib
                ref = max(abs(s), scale)
                if t > 1 and (abs(contrib) <= negligible * ref or wgt < tiny):
                    quiet += 1
                    if quiet >= 2:
                        break
                else:
                    quiet = 0
                if t > t_cap:
                    break
                k += step
            return s

        negligible = mpf(10) ** (-(ctx.working + 5))
        # beyond this t the nearest node is closer than 10^-(10^6) to an endpoint
        t_cap = 16
        h = mpf(1)
        total = level_sum(h, 0, 1, mpf(0))
        prev = total * h
        diff = None
        for _ in range(max_level):
            h /= 2
            total += level_sum(h, 1, 2, abs(total) * h)
            cur = total * h
            diff = abs(cur - prev)
            if diff <= target * abs(cur):
                return +cur
            prev = cur
        raise NoConvergence(
            f"tanh-sinh did not converge after {max_level} halvings "
            f"(last difference {mpmath.nstr(diff, 5)})"
        )

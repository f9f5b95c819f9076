"""Moments of the symmetric weight on [-1, 1] and of its shifted companion.

The symmetric weight is ``(1 - x^2)^alpha (1 - k^2 x^2)^beta`` on [-1, 1];
the shifted weight is ``x^a (1 - x)^b (1 - k^2 x)^c`` on [0, 1].  Both
families of moments are Beta functions times a terminating-or-convergent
Gauss series in ``k^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from .errors import DomainError
from .specialfn import PrecisionContext, hyp2f1, loggamma, to_real

__all__ = [
    "Params",
    "ShiftedParams",
    "MomentTable",
    "moment_sym",
    "moment_shifted",
    "build_table",
    "exact",
]


def exact(x) -> Fraction:
    """Parse a parameter to an exact rational (floats via their repr)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a parameter value")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise DomainError(f"cannot parse {x!r} as a decimal") from exc
    if isinstance(x, mpf):
        man, exp = x.man_exp
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    raise TypeError(f"unsupported parameter type {type(x).__name__}")


@dataclass(frozen=True)
class Params:
    """Parameters of the symmetric weight plus target digits.

    ``alpha``, ``beta`` and ``ksq`` are stored as exact rationals so that
    every precision level sees the same input.
    """

    alpha: Fraction
    beta: Fraction
    ksq: Fraction
    digits: int = 50
    guard: int = 15

    def __init__(self, alpha, beta, ksq, digits: int = 50, guard: int = 15):
        object.__setattr__(self, "alpha", exact(alpha))
        object.__setattr__(self, "beta", exact(beta))
        object.__setattr__(self, "ksq", exact(ksq))
        object.__setattr__(self, "digits", int(digits))
        object.__setattr__(self, "guard", int(guard))
        if self.alpha <= -1:
            raise DomainError(f"alpha must exceed -1, got {self.alpha}")
        if not 0 <= self.ksq <= 1:
            raise DomainError(f"ksq must lie in [0, 1], got {self.ksq}")
        if self.ksq == 1 and self.alpha + self.beta <= -1:
            raise DomainError("at ksq = 1 the weight needs alpha + beta > -1")
        PrecisionContext(self.digits, self.guard)

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.digits, self.guard)

    def with_digits(self, digits: int) -> "Params":
        return Params(self.alpha, self.beta, self.ksq, digits, self.guard)

    def with_guard(self, guard: int) -> "Params":
        return Params(self.alpha, self.beta, self.ksq, self.digits, guard)

    def with_ksq(self, ksq) -> "Params":
        return Params(self.alpha, self.beta, ksq, self.digits, self.guard)

    def mp(self):
        """(alpha, beta, ksq) as mpf at the current precision."""
        return to_real(self.alpha), to_real(self.beta), to_real(self.ksq)

    def weight(self, x):
        a, b, q = self.mp()
        return (1 - x * x) ** a * (1 - q * x * x) ** b

    @property
    def symmetric(self) -> bool:
        return True


@dataclass(frozen=True)
class ShiftedParams:
    """Parameters of ``x^a (1-x)^b (1-k^2 x)^c`` on [0, 1]."""

    a: Fraction
    b: Fraction
    c: Fraction
    ksq: Fraction
    digits: int = 50
    guard: int = 15

    def __init__(self, a, b, c, ksq, digits: int = 50, guard: int = 15):
        object.__setattr__(self, "a", exact(a))
        object.__setattr__(self, "b", exact(b))
        object.__setattr__(self, "c", exact(c))
        object.__setattr__(self, "ksq", exact(ksq))
        object.__setattr__(self, "digits", int(digits))
        object.__setattr__(self, "guard", int(guard))
        if self.a <= -1 or self.b <= -1:
            raise DomainError("shifted weight needs a > -1 and b > -1")
        if not 0 <= self.ksq < 1:
            raise DomainError(f"ksq must lie in [0, 1), got {self.ksq}")
        PrecisionContext(self.digits, self.guard)

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.digits, self.guard)

    def with_digits(self, digits: int) -> "ShiftedParams":
        return ShiftedParams(self.a, self.b, self.c, self.ksq, digits, self.guard)

    def with_guard(self, guard: int) -> "ShiftedParams":
        return ShiftedParams(self.a, self.b, self.c, self.ksq, self.digits, guard)

    def with_ksq(self, ksq) -> "ShiftedParams":
        return ShiftedParams(self.a, self.b, self.c, ksq, self.digits, self.guard)

    def mp(self):
        return tuple(to_real(v) for v in (self.a, self.b, self.c, self.ksq))

    def weight(self, x):
        a, b, c, q = self.mp()
        return x**a * (1 - x) ** b * (1 - q * x) ** c

    @property
    def symmetric(self) -> bool:
        return False


def _check_index(j):
    if int(j) != j or j < 0:
        raise DomainError(f"moment index must be a non-negative integer, got {j!r}")
    return int(j)


def _log_beta(x, y, ctx):
    return loggamma(x, ctx) + loggamma(y, ctx) - loggamma(x + y, ctx)


def moment_sym(j: int, p: Params):
    """j-th moment of the symmetric weight; odd moments are exact zeros."""
    j = _check_index(j)
    if j % 2:
        return mpf(0)
    m = j // 2
    ctx = p.ctx
    with ctx.workdps():
        a, b, q = p.mp()
        half = mpf(1) / 2
        if p.ksq == 1:
            # weight collapses to (1-x^2)^(alpha+beta)
            a, q = a + b, mpf(0)
        # integral of x^{2m}(1-x^2)^a over [-1,1] is B(m+1/2, a+1)
        lb = _log_beta(m + half, a + 1, ctx)
        v = mpmath.exp(lb)
        if q != 0 and p.beta != 0:
            v *= hyp2f1(-b, m + half, m + a + 3 * half, q, ctx)
        return +v


def moment_shifted(j: int, a, b, c, ksq, ctx: PrecisionContext | None = None):
    """j-th moment of ``x^a (1-x)^b (1-k^2 x)^c`` on [0, 1]."""
    j = _check_index(j)
    if ctx is None:
        ctx = PrecisionContext()
    with ctx.workdps():
        a, b, c, q = (to_real(v) for v in (a, b, c, ksq))
        if a <= -1 or b <= -1:
            raise DomainError("shifted weight needs a > -1 and b > -1")
        if not 0 <= q < 1:
            raise DomainError("ksq must lie in [0, 1)")
        v = mpmath.exp(_log_beta(a + j + 1, b + 1, ctx))
        if q != 0 and c != 0:
            v *= hyp2f1(-c, a + j + 1, a + j + b + 2, q, ctx)
        return +v


@dataclass(frozen=True)
class MomentTable:
    """Moments mu_0 ... mu_{2N} of one weight."""

    params: Params | ShiftedParams
    mu: tuple = field(repr=False)

    @property
    def kind(self) -> str:
        if isinstance(self.params, ShiftedParams):
            p = self.params
            return f"Shifted({p.a},{p.b},{p.c})"
        return "Symmetric"

    @property
    def N(self) -> int:
        return (len(self.mu) - 1) // 2

    def __getitem__(self, j):
        return self.mu[j]

    def __len__(self):
        return len(self.mu)


def build_table(N: int, p: Params | ShiftedParams) -> MomentTable:
    """Moments 0 ... 2N of the weight described by ``p``."""
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    N = int(N)
    if isinstance(p, ShiftedParams):
        ctx = p.ctx
        mu = tuple(moment_shifted(j, p.a, p.b, p.c, p.ksq, ctx) for j in range(2 * N + 1))
    else:
        mu = tuple(moment_sym(j, p) for j in range(2 * N + 1))
    return MomentTable(p, mu)

"""Residuals of the ladder system, the difference equations and the ODE.

Every checker returns a :class:`ResidualReport`.  The residual is the sum
of the equation's additive terms (left side minus right side); the relative
residual divides it by the largest single term, so equations whose terms
span many orders of magnitude are judged on the digits that matter.

Index conventions follow :class:`~elliptic_op.opseq.OPSequence`: ``beta[n]``
with ``beta[0] = 0``, ``p1[n]`` for n up to N+1, ladder variables ``R`` and
``Rstar`` up to N-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from . import _sextic_table
from .errors import DomainError, NegativeRadicand, RemovableSingularity, SingularElimination, SingularPoint
from .opseq import AuxVars, OPSequence, eval_poly
from .specialfn import PrecisionContext, to_real

__all__ = [
    "ResidualReport",
    "ODECoefficients",
    "report",
    "default_tol",
    "residual_string",
    "residual_aux_identities",
    "residual_p1_square_identity",
    "residual_thm_1_1",
    "p1_from_quadratic",
    "g_n_squared",
    "g_n",
    "residual_thm_1_2",
    "C_n",
    "C_n_rees",
    "residual_gen_rees",
    "residual_gen_rees_expanded",
    "sextic_coefficients",
    "residual_thm_1_4",
    "residual_thm_1_5",
    "thm_1_5_terms",
    "residual_fourth_order",
    "K_n",
    "elimination_p1",
    "elimination_r",
    "ode_coefficients",
    "rees_ode_coefficients",
    "residual_ode",
    "jacobi_beta_closed",
    "k0_factors",
    "fixed_points",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ResidualReport:
    """One equation checked at one index (or point)."""

    name: str
    n: object
    absolute: mpf
    relative: mpf
    passed: bool
    tol: mpf
    diff_error: object = None

    def as_dict(self, places: int | None = None) -> dict:
        def fmt(v):
            if places is None:
                return v
            return mpmath.nstr(v, places, min_fixed=1, max_fixed=0)

        n = self.n if isinstance(self.n, int) else fmt(self.n)
        out = {"name": self.name, "n": n, "absolute": fmt(self.absolute),
               "relative": fmt(self.relative), "pass": bool(self.passed)}
        if self.diff_error is not None:
            out["diff_error"] = fmt(self.diff_error)
        return out


def default_tol(digits: int, headroom: int = 25):
    return mpf(10) ** (-(digits - headroom))


def report(name, n, terms, tol) -> ResidualReport:
    """Sum ``terms`` and normalise by the largest one."""
    total = mpmath.fsum(terms)
    big = max((abs(t) for t in terms), default=mpf(0))
    rel = abs(total) / big if big else mpf(0)
    return ResidualReport(name, n, abs(total), rel, bool(rel < tol), tol)


def _setup(seq: OPSequence, tol):
    p = seq.params
    if tol is None:
        tol = default_tol(seq.digits)
    a, b, q = p.mp()
    return a, b, q, a + b, tol


def _need(cond, msg):
    if not cond:
        raise IndexError(msg)


# ---------------------------------------------------------------------------
# ladder-variable system
# ---------------------------------------------------------------------------


def residual_string(seq: OPSequence, aux: AuxVars, n: int, tol=None):
    """The nine distinct residue equations of the ladder compatibility conditions."""
    _need(1 <= n <= seq.N - 2, f"string equations need 1 <= n <= N-2, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, tol = _setup(seq, tol)
        k = mpmath.sqrt(q)
        B = seq.beta
        R, r, Rs, rs = aux.R, aux.r, aux.Rstar, aux.rstar
        sumR = mpmath.fsum(R[:n])
        sumRs = mpmath.fsum(Rs[:n])
        bracket = [2 * rs[n] * r[n], -a * rs[n], -b * r[n]]
        cross = [R[n] * Rs[n - 1], Rs[n] * R[n - 1]]
        out = [
            report("string.S1.R", n, [r[n], r[n + 1], -a, R[n]], tol),
            report("string.S1.Rstar", n, [rs[n], rs[n + 1], -b, Rs[n] / k], tol),
            report("string.S2.infinity", n, [mpf(1), 2 * rs[n + 1], -2 * rs[n], 2 * r[n + 1], -2 * r[n]], tol),
            report("string.S2.R", n, [r[n], -r[n + 1], -B[n + 1] * R[n + 1], B[n] * R[n - 1]], tol),
            report("string.S2.Rstar", n,
                   [rs[n] / k, -rs[n + 1] / k, -B[n + 1] * Rs[n + 1], B[n] * Rs[n - 1]], tol),
            report("string.S2p.double.R", n, [r[n] * r[n], -a * r[n], -B[n] * R[n] * R[n - 1]], tol),
            report("string.S2p.double.Rstar", n,
                   [rs[n] * rs[n], -b * rs[n], -B[n] * Rs[n] * Rs[n - 1]], tol),
            report("string.S2p.simple.R", n,
                   [sumR / 2]
                   + [-q / (q - 1) * t for t in bracket]
                   + [-B[n] * R[n] * R[n - 1]]
                   + [k * B[n] / (q - 1) * t for t in cross], tol),
            report("string.S2p.simple.Rstar", n,
                   [sumRs / 2]
                   + [k / (q - 1) * t for t in bracket]
                   + [-k * B[n] * Rs[n] * Rs[n - 1]]
                   + [-q / (q - 1) * B[n] * t for t in cross], tol),
        ]
    return out


def residual_aux_identities(seq: OPSequence, aux: AuxVars, n: int, tol=None):
    """Derived identities among the ladder variables at index n.

    Covers r*_n + r_n = -n/2, R*_n/k + R_n = alpha+beta+n+1/2, its partial
    sum, beta_n as a rational function of (r_n, R_n), the closed form of
    sum R_j, the mixed relation with R_{n-1}, and the telescoped
    infinity-residue equation.
    """
    _need(1 <= n <= seq.N - 1, f"identities need 1 <= n <= N-1, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, tol = _setup(seq, tol)
        k = mpmath.sqrt(q)
        B = seq.beta
        R, r, Rs, rs = aux.R, aux.r, aux.Rstar, aux.rstar
        c = s + n + mpf(1) / 2  # alpha+beta+n+1/2
        d = s + n - mpf(1) / 2
        out = [
            report("aux.r_sum", n, [rs[n], r[n], mpf(n) / 2], tol),
            report("aux.R_sum", n, [Rs[n] / k, R[n], -c], tol),
            report("aux.R_partial_sum", n,
                   [Rs[j] / k for j in range(n)] + [R[j] for j in range(n)] + [-n * (s + mpf(n) / 2)], tol),
        ]
        t = c / R[n] - 1
        num = [(1 + q * t) * r[n] ** 2, (n + b - a * q * t) * r[n], mpf(n) / 2 * (mpf(n) / 2 + b)]
        den = d * (c - R[n])
        out.append(report("aux.beta_from_rR", n, [q * B[n]] + [-v / den for v in num], tol))
        out.append(report(
            "aux.sum_R_closed", n,
            [mpmath.fsum(R[:n]) / 2, r[n] * (s + n), -mpf(n) / 2 * (mpf(n) / 2 + b + a * q) / (q - 1),
             q / (q - 1) * c * d * B[n]], tol))
        out.append(report(
            "aux.mixed_R", n,
            [(q - 1) * r[n] ** 2, -r[n] * (n + b + a * q), -mpf(n) / 2 * (mpf(n) / 2 + b),
             -q * B[n] * c * R[n - 1], -q * B[n] * d * R[n], q * B[n] * c * d], tol))
        out.append(report(
            "aux.r_from_p1", n,
            [(q - 1) * r[n], -mpf(n) / 2, q * c * B[n], -q * seq.p1[n]], tol))
    return out


def residual_p1_square_identity(seq: OPSequence, n: int, tol=None):
    """p1(n-1)^2 - p1(n)^2 - beta_{n-1}^2 - 2 beta_{n-1} p1(n) = 0."""
    _need(1 <= n <= seq.N + 1, f"need 1 <= n <= N+1, got {n}")
    with seq.ctx.workdps():
        *_, tol = _setup(seq, tol)
        P, B = seq.p1, seq.beta
        return report("p1_square_identity", n,
                      [P[n - 1] ** 2, -P[n] ** 2, -B[n - 1] ** 2, -2 * B[n - 1] * P[n]], tol)


# ---------------------------------------------------------------------------
# quadratic in p1 and the third-order equation
# ---------------------------------------------------------------------------


def _thm11_terms(n, a, b, q, s, Bp, Bn, Bm, P):
    h = mpf(1) / 2
    return [
        q * P * P,
        2 * q * (s + n - h) * Bn * P,
        -(a * q + b) * P,
        -q * (s + n + 3 * h) * (s + n - h) * Bn * Bn,
        -q * (s + n + 3 * h) * (s + n - h) * Bp * Bn,
        ((b + n + h) * q + (a + n + h)) * (s + n - h) * Bn,
        -q * (s + n + h) * (s + n - 3 * h) * Bm * Bn,
        -mpf(n) / 2 * (mpf(n) / 2 + s),
    ]


def residual_thm_1_1(seq: OPSequence, n: int, tol=None):
    """Quadratic relation between p1(n) and beta_{n-1}, beta_n, beta_{n+1}."""
    _need(1 <= n <= seq.N - 1, f"need 1 <= n <= N-1, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, tol = _setup(seq, tol)
        B = seq.beta
        terms = _thm11_terms(n, a, b, q, s, B[n + 1], B[n], B[n - 1], seq.p1[n])
        return report("thm1.1", n, terms, tol)


def g_n_squared(seq: OPSequence, n: int):
    """Discriminant quantity g_n^2 built from beta_{n-1}, beta_n, beta_{n+1}."""
    _need(0 <= n <= seq.N - 1, f"need 0 <= n <= N-1, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, _ = _setup(seq, 1)
        h = mpf(1) / 2
        B = seq.beta
        Bm = B[n - 1] if n >= 1 else mpf(0)
        return mpmath.fsum([
            4 * q * q * (s + n + h) * (s + n - 3 * h) * B[n] * Bm,
            4 * q * q * (s + n + 3 * h) * (s + n - h) * B[n + 1] * B[n],
            8 * q * q * (s + n + h) * (s + n - h) * B[n] ** 2,
            -4 * q * (q + 1) * (s + n + h) * (s + n - h) * B[n],
            (a * q + b) ** 2,
            q * n * (n + 2 * s),
        ])


def g_n(seq: OPSequence, n: int):
    """g_n on the branch fixed by g_0 = alpha k^2 + beta.

    The root carries the sign of ``alpha k^2 + beta``: the telescoped form
    of the difference equation pins ``g_0`` to that value, and ``g_n`` does
    not vanish along the sequence, so the sign is inherited for every n.
    """
    g2 = g_n_squared(seq, n)
    with seq.ctx.workdps():
        if g2 < 0:
            raise NegativeRadicand(f"g_{n}^2 = {mpmath.nstr(g2, 5)} < 0")
        a, b, q = seq.params.mp()
        g0 = a * q + b
        root = mpmath.sqrt(g2)
        return -root if g0 < 0 else root


def p1_from_quadratic(seq: OPSequence, n: int):
    """p1(n) as the root of the quadratic selected by the g_n branch."""
    with seq.ctx.workdps():
        a, b, q, s, _ = _setup(seq, 1)
        g = g_n(seq, n)
        return (-2 * q * (s + n - mpf(1) / 2) * seq.beta[n] + b + a * q - g) / (2 * q)


def residual_thm_1_2(seq: OPSequence, n: int, tol=None):
    """(signed, squared) forms of the third-order equation for beta_n."""
    _need(1 <= n <= seq.N - 2, f"need 1 <= n <= N-2, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, tol = _setup(seq, tol)
        h = mpf(1) / 2
        B = seq.beta
        signed = report(
            "thm1.2.signed", n,
            [2 * q * (s + n + h) * (B[n + 1] - B[n]), g_n(seq, n + 1), -g_n(seq, n)], tol)
        dB = B[n + 1] - B[n]
        brace = [
            4 * q * q * B[n] * (s + n + 3 * h) * (s + n - h) * B[n + 1],
            4 * q * q * B[n] * (s + n + h) * (s + n - 3 * h) * B[n - 1],
            8 * q * q * (s + n + h) * (s + n - h) * B[n] ** 2,
            -4 * q * (q + 1) * (s + n + h) * (s + n - h) * B[n],
            (a * q + b) ** 2,
            q * n * (n + 2 * s),
        ]
        inner = [
            q * (s + n + 5 * h) * B[n + 1] * (B[n + 2] + B[n + 1]),
            -(q + 1) * (s + n + 3 * h) * B[n + 1],
            -q * (s + n + h) * B[n] * (B[n] + B[n - 1]),
            (q + 1) * (s + n - h) * B[n],
            h,
            2 * q * B[n] * ((s + n + h) * dB + B[n] + B[n - 1]),
        ]
        # expanded so that the normalisation sees the O(1) products, not dB^2
        terms = [dB * dB * t for t in brace] + [-u * v for u in inner for v in inner]
        squared = report("thm1.2.squared", n, terms, tol)
    return signed, squared


def residual_thm_1_2_full(seq: OPSequence, n: int, tol=None):
    """Squared form written through g_n^2 and g_{n+1}^2."""
    _need(1 <= n <= seq.N - 2, f"need 1 <= n <= N-2, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, tol = _setup(seq, tol)
        B = seq.beta
        c2 = (s + n + mpf(1) / 2) ** 2
        dB2 = (B[n + 1] - B[n]) ** 2
        g2, g2p = g_n_squared(seq, n), g_n_squared(seq, n + 1)
        inner = [g2p, -g2, -4 * q * q * c2 * dB2]
        terms = [16 * q * q * c2 * dB2 * g2] + [-u * v for u in inner for v in inner]
        return report("thm1.2.full", n, terms, tol)


# ---------------------------------------------------------------------------
# generalised Rees equation
# ---------------------------------------------------------------------------


def C_n(seq: OPSequence, n: int):
    _need(0 <= n <= seq.N - 1, f"C_n needs 0 <= n <= N-1, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, _ = _setup(seq, 1)
        h = mpf(1) / 2
        B = seq.beta
        return (2 * (s + n + 3 * h) * q * (B[n] + B[n + 1])
                - 2 * ((b + n + h) * q + a + n + h) - 4 * q * seq.p1[n])


def C_n_rees(seq: OPSequence, n: int):
    """The alpha = beta = -1/2 form of C_n."""
    _need(0 <= n <= seq.N - 1, f"C_n needs 0 <= n <= N-1, got {n}")
    with seq.ctx.workdps():
        q = seq.params.mp()[2]
        B = seq.beta
        return (2 * n + 1) * q * (B[n] + B[n + 1]) - 2 * n * (q + 1) - 4 * q * seq.p1[n]


def residual_gen_rees(seq: OPSequence, n: int, tol=None):
    """beta_{n-1} C_{n-2} = beta_n C_n + 1."""
    _need(2 <= n <= seq.N - 1, f"need 2 <= n <= N-1, got {n}")
    with seq.ctx.workdps():
        *_, tol = _setup(seq, tol)
        B = seq.beta
        return report("thm1.3", n, [B[n - 1] * C_n(seq, n - 2), -B[n] * C_n(seq, n), mpf(-1)], tol)


def residual_gen_rees_expanded(seq: OPSequence, n: int, tol=None):
    """The same equation with p1(n) kept and beta_{n-2} explicit."""
    _need(2 <= n <= seq.N - 1, f"need 2 <= n <= N-1, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, tol = _setup(seq, tol)
        h = mpf(1) / 2
        B = seq.beta
        terms = [
            4 * q * (B[n] - B[n - 1]) * seq.p1[n],
            -2 * q * (s + n + 3 * h) * B[n] * (B[n] + B[n + 1]),
            2 * ((a + n + h) + (b + n + h) * q) * B[n],
            2 * q * (s + n - 5 * h) * B[n - 1] * (B[n - 1] + B[n - 2]),
            -2 * ((a + n - 3 * h) + (b + n - 3 * h) * q) * B[n - 1],
            mpf(-1),
        ]
        return report("thm1.3.expanded", n, terms, tol)


# ---------------------------------------------------------------------------
# second-order equations
# ---------------------------------------------------------------------------


def sextic_coefficients(n: int, alpha, beta, ksq) -> dict:
    """Exact coefficients c_{p,q,r} (keyed by exponent triple)."""
    return _sextic_table.coefficients(n, alpha, beta, ksq)


def residual_thm_1_4(seq: OPSequence, n: int, tol=None):
    """Degree-6 polynomial relation among beta_{n+1}, beta_n, beta_{n-1}."""
    _need(1 <= n <= seq.N - 1, f"need 1 <= n <= N-1, got {n}")
    p = seq.params
    coeffs = sextic_coefficients(n, p.alpha, p.beta, p.ksq)
    with seq.ctx.workdps():
        *_, tol = _setup(seq, tol)
        B = seq.beta
        terms = []
        for (i, j, l), c in coeffs.items():
            if c:
                terms.append(to_real(c) * B[n + 1] ** i * B[n] ** j * B[n - 1] ** l)
        return report("thm1.4", n, terms, tol)


def thm_1_5_terms(n, a, b, q, Pm, P, Pp, half):
    """Additive terms of the second-order p1 relation.

    Pure arithmetic, so it accepts mpf or symbolic inputs; ``half`` is 1/2
    in the caller's number type.
    """
    h = half
    s = a + b
    S = s + n
    c = (b + n - h) * q + a + n - h
    return [
        q * q * (S - 3 * h) * (S + h) ** 2 * Pp * Pp * (P - Pm),
        -q * q * (S - 3 * h) ** 2 * (S + h) * Pm * Pm * (P - Pp),
        (S - h) ** 2 * q * (S - 3 * h) * Pm * q * P * P,
        -(S - h) ** 2 * q * (S + h) * Pp * q * P * P,
        -(S - h) ** 2 * c * q * P * P,
        2 * (S + h) * (S - 3 * h) * q * q * Pp * P * Pm,
        q * (S + h) * (S - 3 * h) * c * Pp * P,
        q * (S + h) * (S - 3 * h) * c * P * Pm,
        -q * (S + h) * (S - 3 * h) * c * Pp * Pm,
        (a * q + b) * (S + h) * Pp * q * P,
        -(a * q + b) * (S - 3 * h) * Pm * q * P,
        (n - 1) * h * (S + h) * (s + n * h - h) * q * Pp,
        -n * h * (S - 3 * h) * (s + n * h) * q * Pm,
        (a * (b + n - h) * q * q + h * (a - b + n - h) * (a - b - n + h) * q + b * (a + n - h)) * P,
        n * (n - 1) * h * h * (a * q + b),
    ]


def residual_thm_1_5(seq: OPSequence, n: int, tol=None):
    """Second-order relation among p1(n-1), p1(n), p1(n+1).

    The p1(n-1)^2 term carries (S-3/2)^2 (S+1/2) and the triple product a
    factor 2; both were checked by eliminating the ladder variables
    symbolically (see tests/test_oracles.py).
    """
    _need(2 <= n <= seq.N, f"need 2 <= n <= N, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, tol = _setup(seq, tol)
        terms = thm_1_5_terms(n, a, b, q, seq.p1[n - 1], seq.p1[n], seq.p1[n + 1], mpf(1) / 2)
        return report("thm1.5", n, terms, tol)


def residual_fourth_order(seq: OPSequence, n: int, tol=None):
    """Fourth-order equation for beta_n (p1 eliminated from the Rees form)."""
    _need(2 <= n <= seq.N - 2, f"need 2 <= n <= N-2, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, tol = _setup(seq, tol)
        h = mpf(1) / 2
        B = seq.beta
        S = s + n
        terms = [
            2 * q * (B[n + 1] - B[n]) * B[n] * (B[n] - B[n - 1]),
            -q * (S + 3 * h) * (B[n + 1] ** 2 - B[n] ** 2) * B[n],
            -q * (S - 3 * h) * B[n] * (B[n] ** 2 - B[n - 1] ** 2),
            -(q + 1) * B[n] * (B[n + 1] + B[n] + B[n - 1]),
            3 * (q + 1) * B[n + 1] * B[n - 1],
            -B[n + 1] / 2,
            B[n],
            -B[n - 1] / 2,
            q * (S - 5 * h) * (B[n + 1] - B[n]) * B[n - 1] * (B[n - 1] + B[n - 2]),
            q * (S + 5 * h) * (B[n + 2] + B[n + 1]) * B[n + 1] * (B[n] - B[n - 1]),
        ]
        return report("fourth_order", n, terms, tol)


# ---------------------------------------------------------------------------
# elimination formulas
# ---------------------------------------------------------------------------


def _K_terms(n, s, q, Bp, Bn, Bm):
    return [
        (1 + 12 * q * Bn * Bn + 2 * ((Bp + Bm - 2) * q - 2) * Bn) * (s + n),
        3 * q * Bn * (Bp - Bm),
    ]


def K_n(seq: OPSequence, n: int):
    _need(1 <= n <= seq.N - 1, f"need 1 <= n <= N-1, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, _ = _setup(seq, 1)
        B = seq.beta
        return mpmath.fsum(_K_terms(n, s, q, B[n + 1], B[n], B[n - 1]))


def _K_checked(seq, n):
    with seq.ctx.workdps():
        a, b, q, s, _ = _setup(seq, 1)
        B = seq.beta
        terms = _K_terms(n, s, q, B[n + 1], B[n], B[n - 1])
        K = mpmath.fsum(terms)
        scale = max(abs(t) for t in terms)
        if abs(K) <= scale * mpf(10) ** (-(seq.digits // 2)):
            raise SingularElimination(f"K_{n} vanishes to working precision")
        return K


def elimination_p1(seq: OPSequence, n: int):
    """p1(n) from beta_{n-1}, beta_n, beta_{n+1} alone."""
    _need(1 <= n <= seq.N - 1, f"need 1 <= n <= N-1, got {n}")
    K = _K_checked(seq, n)
    with seq.ctx.workdps():
        a, b, q, s, _ = _setup(seq, 1)
        B = seq.beta
        Bp, Bn, Bm = B[n + 1], B[n], B[n - 1]
        S = s + n
        rhs = mpmath.fsum([
            2 * (2 * q * (S + mpf(3) / 2) * Bp + 10 * q * (S + mpf(7) / 10) * Bn
                 - (2 * b + 2 * n + 1) * q - (2 * a + 2 * n + 1)) * (S - mpf(3) / 2) * q * Bn * Bm,
            2 * (10 * (S - mpf(3) / 10) * q * Bn - (2 * b + 2 * n - 1) * q - (2 * a + 2 * n - 1))
            * (S + mpf(3) / 2) * q * Bn * Bp,
            20 * (S + mpf(3) / 2) * (S - mpf(3) / 10) * q * q * Bn ** 3,
            -24 * (q * S * (b + n + mpf(1) / 3) + S * (a + n + mpf(1) / 3) - (q + 1) / 4) * q * Bn ** 2,
            ((2 * b + 2 * n + 1) * (2 * b + 2 * n - 1) * q * q
             + (12 * n * n + 2 * n - 1 + (16 * n + 2) * (a + b) + 8 * a * b) * q
             + (2 * a + 2 * n + 1) * (2 * a + 2 * n - 1)) * Bn,
            -2 * n * ((b + mpf(n) / 2) * q + a + mpf(n) / 2),
        ])
        return rhs / (4 * q * K)


def elimination_r(seq: OPSequence, n: int):
    """r_n from beta_{n-1}, beta_n, beta_{n+1} alone."""
    _need(1 <= n <= seq.N - 1, f"need 1 <= n <= N-1, got {n}")
    K = _K_checked(seq, n)
    with seq.ctx.workdps():
        a, b, q, s, _ = _setup(seq, 1)
        B = seq.beta
        Bp, Bn, Bm = B[n + 1], B[n], B[n - 1]
        S = s + n
        rhs = mpmath.fsum([
            2 * (2 * q * (S + mpf(3) / 2) * Bp + 6 * q * (S + mpf(5) / 6) * Bn
                 - (2 * b + 2 * n + 1) * q - (2 * a + 1)) * (S - mpf(3) / 2) * q * Bn * Bm,
            2 * (6 * q * (S - mpf(5) / 6) * Bn - (2 * b + 2 * n - 1) * q - (2 * a - 1))
            * (S + mpf(3) / 2) * q * Bn * Bp,
            -(28 * S * S + 9) * q * q * Bn ** 3,
            8 * ((q + 1) * S * (2 * a - b - n) + mpf(3) / 4 * (q + 1) - 3 * S * (a - n - b)) * q * Bn ** 2,
            ((2 * b + 2 * n + 1) * (2 * b + 2 * n - 1) * q * q - (4 * a * a + 4 * b * b + 1) * q
             + 4 * (a * a - n * n) - 8 * n * b - 1) * Bn,
            -2 * n * (q - 1) * (b + mpf(n) / 2),
        ])
        return rhs / (4 * (q - 1) * K)


# ---------------------------------------------------------------------------
# second-order ODE for P_n
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ODECoefficients:
    """Polynomial coefficients (ascending powers of x) of M_n, L_n, U_n."""

    n: int
    Cn: mpf
    M: tuple
    L: tuple
    U: tuple
    alpha: mpf
    beta: mpf
    ksq: mpf

    @staticmethod
    def _ev(c, x, deriv=0):
        acc = mpf(0)
        for i in range(len(c) - 1, deriv - 1, -1):
            w = c[i]
            for t in range(deriv):
                w *= i - t
            acc = acc * x + w
        return acc

    def Mn(self, x, deriv=0):
        return self._ev(self.M, x, deriv)

    def Ln(self, x):
        return self._ev(self.L, x)

    def Un(self, x):
        return self._ev(self.U, x)

    def Y(self, x):
        return (1 - x * x) * (1 - self.ksq * x * x)

    def X(self, x):
        return (1 - x * x) ** (2 * self.alpha + 2) * (1 - self.ksq * x * x) ** (2 * self.beta + 2)

    def half_log_X_prime(self, x):
        """X'/(2X) in closed form."""
        q = self.ksq
        return -(2 * self.alpha + 2) * x / (1 - x * x) - (2 * self.beta + 2) * q * x / (1 - q * x * x)


def ode_coefficients(seq: OPSequence, n: int) -> ODECoefficients:
    _need(1 <= n <= seq.N - 1, f"need 1 <= n <= N-1, got {n}")
    with seq.ctx.workdps():
        a, b, q, s, _ = _setup(seq, 1)
        h = mpf(1) / 2
        B, P = seq.beta, seq.p1
        Cn = C_n(seq, n)
        M = (-Cn, mpf(0), -2 * (s + n + h) * q)
        L = (mpf(0), -n * (1 + q) + 2 * q * (s + n + h) * B[n] - 2 * q * P[n], mpf(0), n * q)
        U = (2 * q * (2 * n + 2 * s + 1) * (P[n] - B[n]) + n * q * (n + 2 * b + 1) + n * (n + 2 * a + 1),
             mpf(0), -q * n * (n + 2 * s + 3))
        return ODECoefficients(n, Cn, M, L, U, a, b, q)


def rees_ode_coefficients(seq: OPSequence, n: int) -> ODECoefficients:
    """M_n, L_n, U_n in the alpha = beta = -1/2 form, using partial sums of beta_j."""
    _need(1 <= n <= seq.N - 1, f"need 1 <= n <= N-1, got {n}")
    with seq.ctx.workdps():
        q = seq.params.mp()[2]
        B = seq.beta
        s1 = mpmath.fsum(B[1:n])
        s2 = mpmath.fsum(B[1:n + 1])
        M = (-(2 * n + 1) * q * (B[n] + B[n + 1]) + 2 * n * (1 + q) - 4 * q * s1, mpf(0),
             -(2 * n - 1) * q)
        L = (mpf(0), (2 * n - 1) * q * B[n] - n * (1 + q) + 2 * q * s1, mpf(0), n * q)
        U = (-2 * (2 * n - 1) * q * s2 + n * n * (1 + q), mpf(0), -n * (n + 1) * q)
        half = -mpf(1) / 2
        return ODECoefficients(n, -M[0], M, L, U, half, half, q)


def residual_ode(seq: OPSequence, n: int, x, tol=None, threshold=None):
    """Second-order linear ODE for P_n evaluated at a point x in (-1, 1)."""
    coeffs = ode_coefficients(seq, n)
    with seq.ctx.workdps():
        *_, tol = _setup(seq, tol)
        x = to_real(x)
        if not -1 < x < 1:
            raise DomainError("x must lie in (-1, 1)")
        if threshold is None:
            threshold = mpf(10) ** (-(seq.digits // 4))
        Mx = coeffs.Mn(x)
        Yx = coeffs.Y(x)
        if abs(Mx) < threshold or abs(Yx) < threshold:
            raise SingularPoint(f"M_n or Y vanishes near x = {mpmath.nstr(x, 8)}")
        Mp = coeffs.Mn(x, 1)
        p0 = eval_poly(seq, n, x, 0)
        p1 = eval_poly(seq, n, x, 1)
        p2 = eval_poly(seq, n, x, 2)
        terms = [
            p2,
            (coeffs.half_log_X_prime(x) - Mp / Mx) * p1,
            (coeffs.Ln(x) * Mp / (Yx * Mx) + coeffs.Un(x) / Yx) * p0,
        ]
        return report("thm1.6.ode", x, terms, tol)


# ---------------------------------------------------------------------------
# Jacobi reductions and fixed points
# ---------------------------------------------------------------------------


def jacobi_beta_closed(n: int, a, ctx: PrecisionContext | None = None):
    """n(n+2a)/((2n+2a+1)(2n+2a-1)), the symmetric Jacobi recurrence coefficient."""
    a = Fraction(a) if not isinstance(a, mpf) else a
    den1 = 2 * n + 2 * a + 1
    den2 = 2 * n + 2 * a - 1
    if den1 == 0 or den2 == 0:
        raise RemovableSingularity(f"closed form is 0/0 or singular at n={n}, a={a}")
    ctx = ctx or PrecisionContext()
    with ctx.workdps():
        if isinstance(a, Fraction):
            v = Fraction(n) * (n + 2 * a) / (den1 * den2)
            return to_real(v)
        return n * (n + 2 * a) / (den1 * den2)


def k0_factors(n: int, alpha, beta, beta_n, ctx: PrecisionContext | None = None):
    """The two factors of the k^2 = 0 specialisation of the degree-6 relation."""
    with (ctx or PrecisionContext()).workdps():
        a, b = to_real(alpha), to_real(beta)
        h = mpf(1) / 2
        f1 = (a + 2 * b + n - h) * (a + 2 * b + n + h) * beta_n - (a + b + mpf(n) / 2) * (b + mpf(n) / 2)
        f2 = (a + n - h) * (a + n + h) * beta_n - mpf(n) / 2 * (a + mpf(n) / 2)
        return f1, f2


def fixed_points(ksq, ctx: PrecisionContext | None = None):
    """Constant solutions of the large-n limit: (1/4, 1/(4k^2)); the first is the limit of beta_n."""
    with (ctx or PrecisionContext()).workdps():
        q = to_real(ksq)
        if not 0 < q < 1:
            raise DomainError("fixed points need 0 < ksq < 1")
        return mpf(1) / 4, 1 / (4 * q)

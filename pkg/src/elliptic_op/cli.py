"""Command-line front end.

Subcommands
-----------
moments     moment table mu_0..mu_{2 n_max} as CSV
recurrence  h_n, beta_n, p1(n) and the ladder variables as CSV
verify      residuals of the difference and differential equations
asym        exact beta_n against the large-n expansion, plus the model
toda        k^2-derivative relations for h_n, beta_n and log D_n
painleve    even/odd splitting, sigma form and the H_n decomposition
report      every suite above, with skipped entries for domain errors

Numbers are written as decimal strings with ``digits - 10`` significant
digits.  ``--digits auto`` (the default) resolves to
``max(50, 30 + ceil(2.2 n_max))``; the environment variable
``ELLIPTIC_OP_DIGITS`` replaces that default and ``--digits`` overrides both.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

import mpmath
from mpmath import mpf

from . import asymptotics, diffeq, evolution, moments, opseq
from .diffeq import ResidualReport, report
from .errors import DomainError, EllipticOPError
from .moments import Params

__all__ = ["RunConfig", "run", "main", "resolve_digits", "EQUATIONS", "ODE_POINTS", "STANDARD_POINTS",
           "verify_reports", "toda_reports", "painleve_reports", "asym_rows"]

ENV_DIGITS = "ELLIPTIC_OP_DIGITS"
COMMANDS = ("moments", "recurrence", "verify", "asym", "toda", "painleve", "report")
STANDARD_POINTS = (("-1/2", "-1/2", "1/2"), ("0.3", "0.7", "0.5"), ("-0.2", "1.5", "0.9"))
ODE_POINTS = ("-0.83", "-0.41", "0.07", "0.52", "0.94")

# id -> (first n, callable(seq, aux, n) -> list of reports)
EQUATIONS = {
    "string": (1, lambda s, x, n: diffeq.residual_string(s, x, n)),
    "aux": (1, lambda s, x, n: diffeq.residual_aux_identities(s, x, n)),
    "p1sq": (1, lambda s, x, n: [diffeq.residual_p1_square_identity(s, n)]),
    "thm1.1": (1, lambda s, x, n: [diffeq.residual_thm_1_1(s, n)]),
    "thm1.2": (1, lambda s, x, n: [*diffeq.residual_thm_1_2(s, n), diffeq.residual_thm_1_2_full(s, n)]),
    "thm1.3": (2, lambda s, x, n: [diffeq.residual_gen_rees(s, n), diffeq.residual_gen_rees_expanded(s, n)]),
    "thm1.4": (1, lambda s, x, n: [diffeq.residual_thm_1_4(s, n)]),
    "thm1.5": (2, lambda s, x, n: [diffeq.residual_thm_1_5(s, n)]),
    "fourth": (2, lambda s, x, n: [diffeq.residual_fourth_order(s, n)]),
    "ode": (1, lambda s, x, n: [diffeq.residual_ode(s, n, t) for t in ODE_POINTS]),
}


@dataclass
class RunConfig:
    command: str
    alpha: str = "0.3"
    beta: str = "0.7"
    ksq: str = "0.5"
    n_max: int = 10
    digits: int | str = "auto"
    eq_filter: list = field(default_factory=lambda: ["all"])
    output: str | None = None
    format: str = "json"
    order: int = 6


def resolve_digits(digits, n_max: int) -> int:
    if digits is None or digits == "auto":
        digits = os.environ.get(ENV_DIGITS, "auto")
    if digits == "auto":
        return max(50, 30 + -(-11 * n_max // 5))
    try:
        d = int(digits)
    except ValueError:
        raise DomainError(f"--digits: expected an integer or 'auto', got {digits!r}") from None
    if d < 30:
        raise DomainError(f"--digits: at least 30 digits are required, got {d}")
    return d


def _fmt(v, places):
    if isinstance(v, (int, str)) or v is None:
        return v
    return mpmath.nstr(v, places, min_fixed=1, max_fixed=0)


def _params_dict(p) -> dict:
    return {"alpha": str(p.alpha), "beta": str(p.beta), "ksq": str(p.ksq)}


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def verify_reports(p: Params, n_max: int, eqs=("all",)) -> list:
    """Residual reports of the selected equations for 1 <= n <= n_max."""
    ids = list(EQUATIONS) if "all" in eqs else list(eqs)
    for e in ids:
        if e not in EQUATIONS:
            raise DomainError(f"--eq: unknown equation id {e!r}; choose from {', '.join(EQUATIONS)} or all")
    seq = opseq.build_sequence(p, n_max + 2)
    aux = opseq.aux_from_sequence(seq)
    out = []
    for e in ids:
        first, fn = EQUATIONS[e]
        for n in range(first, n_max + 1):
            out.extend(fn(seq, aux, n))
    if "all" in eqs or "thm1.3" in ids:
        if p.alpha == p.beta == moments.exact("-1/2"):
            with seq.ctx.workdps():
                tol = diffeq.default_tol(seq.digits)
                for n in range(1, n_max + 1):
                    out.append(report("thm1.3.rees_C", n, [diffeq.C_n(seq, n), -diffeq.C_n_rees(seq, n)], tol))
    return out


def toda_reports(p: Params, n_max: int, h=None) -> list:
    grid = evolution.build_grid(p, n_max + 2, h=h)
    out = []
    for n in range(1, n_max + 1):
        out.extend(evolution.toda_check(grid, n))
        out.append(evolution.H_n_check(grid, n))
    return out


def painleve_reports(p: Params, n_max: int, h=None) -> list:
    out = list(evolution.split_check(p, 2 * n_max + 1))
    if p.ksq == 0:
        raise DomainError("the sigma form needs 0 < ksq < 1")
    seq = opseq.build_sequence(p, 2 * n_max + 1)
    grids = {}
    for a in ("-1/2", "1/2"):
        sp = moments.ShiftedParams(a, p.alpha, p.beta, p.ksq, p.digits)
        grids[a] = evolution.build_grid(sp, n_max + 1, h=h, stencil=9)
        for n in range(1, n_max + 1):
            out.append(evolution.sigma_form_residual(evolution.sigma_eval(grids[a], n)))
    for n in range(1, n_max + 1):
        out.extend(evolution.thm_1_8_check(seq, n, grids["-1/2"], grids["1/2"]))
    return out


def asym_rows(p: Params, n_max: int, J: int = 6):
    """(model, rows, window ratio) with rows (n, beta_exact, beta_asym, scaled_error)."""
    model = asymptotics.build_model(p)
    seq = opseq.build_sequence(p, n_max)
    rows = []
    with seq.ctx.workdps():
        for n in range(1, n_max + 1):
            approx = asymptotics.beta_asym(model, n, J)
            rows.append((n, seq.beta[n], approx, abs(seq.beta[n] - approx) * mpf(n) ** (J + 1)))
        window = [r[3] for r in rows if r[0] >= n_max // 4]
        ratio = max(window) / min(window) if min(window) else mpmath.inf
    return model, rows, ratio


def _toeplitz_reports(p: Params, n_max: int) -> list:
    out = []
    for n in range(1, min(n_max, 12) + 1):
        out.append(asymptotics.toeplitz_hankel_check(p, n))
    return out


def _summary(results) -> dict:
    checks = [r for r in results if isinstance(r, ResidualReport)]
    worst = max(checks, key=lambda r: r.relative, default=None)
    return {"pass": all(r.passed for r in checks), "worst": worst}


def _document(p, digits, results) -> dict:
    places = max(digits - 10, 5)
    rows = [r.as_dict(places) if isinstance(r, ResidualReport) else r for r in results]
    s = _summary(results)
    worst = s["worst"].as_dict(places) if s["worst"] is not None else {}
    return {"params": _params_dict(p), "digits": digits, "results": rows,
            "summary": {"pass": s["pass"], "worst": worst}}


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _reports_csv(doc) -> str:
    rows = [[r.get("name"), r.get("n", ""), r.get("absolute", ""), r.get("relative", ""),
             r.get("pass", r.get("skipped", ""))] for r in doc["results"]]
    return _csv(["name", "n", "absolute", "relative", "pass"], rows)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_moments(cfg, p, digits):
    places = digits - 10
    tab = moments.build_table(2 * cfg.n_max, p)
    rows = [[j, _fmt(tab[j], places)] for j in range(2 * cfg.n_max + 1)]
    head = f"# alpha={p.alpha} beta={p.beta} ksq={p.ksq} digits={digits}\n"
    return head + _csv(["j", "mu_j"], rows), True


def _cmd_recurrence(cfg, p, digits):
    places = digits - 10
    seq = opseq.build_sequence(p, cfg.n_max + 1)
    aux = opseq.aux_from_sequence(seq) if 0 < p.ksq < 1 else None
    rows = []
    for n in range(cfg.n_max + 1):
        vals = [seq.h[n], seq.beta[n], seq.p1[n]]
        if aux is not None:
            vals += [aux.R[n], aux.r[n], aux.Rstar[n], aux.rstar[n]]
        else:
            vals += ["", "", "", ""]
        rows.append([n] + [_fmt(v, places) for v in vals])
    head = f"# alpha={p.alpha} beta={p.beta} ksq={p.ksq} digits={seq.digits}\n"
    return head + _csv(["n", "h_n", "beta_n", "p1_n", "R_n", "r_n", "Rstar_n", "rstar_n"], rows), True


def _report_output(cfg, p, digits, results):
    doc = _document(p, digits, results)
    text = _reports_csv(doc) if cfg.format == "csv" else json.dumps(doc, indent=1, sort_keys=True) + "\n"
    return text, doc["summary"]["pass"]


def _cmd_asym(cfg, p, digits):
    model, rows, ratio = asym_rows(p, cfg.n_max, cfg.order)
    places = digits - 10
    ok = bool(ratio < 3)
    if cfg.format == "csv":
        body = [[n, _fmt(b, places), _fmt(a, places), _fmt(e, places)] for n, b, a, e in rows]
        return _csv(["n", "beta_exact", f"beta_asym_{cfg.order}", "scaled_error"], body), ok
    doc = {"params": _params_dict(p), "digits": digits, "model": model.as_dict(places),
           "rows": [{"n": n, "beta_exact": _fmt(b, places), "beta_asym": _fmt(a, places),
                     "scaled_error": _fmt(e, places)} for n, b, a, e in rows],
           "summary": {"pass": ok, "window_ratio": _fmt(ratio, 10), "order": cfg.order}}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n", ok


def _skipped(name, exc) -> dict:
    return {"name": name, "skipped": f"skipped: {exc}"}


def _cmd_report(cfg, p, digits):
    results = []
    suites = [
        ("verify", lambda: verify_reports(p, cfg.n_max, cfg.eq_filter)),
        ("toda", lambda: toda_reports(p, cfg.n_max)),
        ("painleve", lambda: painleve_reports(p, min(cfg.n_max, 8))),
        ("toeplitz_hankel", lambda: _toeplitz_reports(p, cfg.n_max)),
        ("third_order", lambda: asymptotics.third_order_expansion_check(asymptotics.build_model(p))[1]),
    ]
    for name, fn in suites:
        try:
            results.extend(fn())
        except DomainError as exc:
            results.append(_skipped(name, exc))
    return _report_output(cfg, p, digits, results)


def run(cfg: RunConfig, stream=None) -> int:
    """Execute one command; returns the exit status."""
    stream = stream or sys.stdout
    try:
        if cfg.command not in COMMANDS:
            raise DomainError(f"unknown command {cfg.command!r}")
        if cfg.n_max < 1:
            raise DomainError(f"--n-max: must be positive, got {cfg.n_max}")
        digits = resolve_digits(cfg.digits, cfg.n_max)
        p = Params(cfg.alpha, cfg.beta, cfg.ksq, digits)
        if cfg.command == "moments":
            text, ok = _cmd_moments(cfg, p, digits)
        elif cfg.command == "recurrence":
            text, ok = _cmd_recurrence(cfg, p, digits)
        elif cfg.command == "verify":
            text, ok = _report_output(cfg, p, digits, verify_reports(p, cfg.n_max, cfg.eq_filter))
        elif cfg.command == "asym":
            text, ok = _cmd_asym(cfg, p, digits)
        elif cfg.command == "toda":
            text, ok = _report_output(cfg, p, digits, toda_reports(p, cfg.n_max))
        elif cfg.command == "painleve":
            text, ok = _report_output(cfg, p, digits, painleve_reports(p, cfg.n_max))
        else:
            text, ok = _cmd_report(cfg, p, digits)
    except (EllipticOPError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stream.write(text)
    return 0 if ok else 1


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="elliptic-op", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", default="0.3", help="exponent of (1-x^2), decimal or a/b")
    common.add_argument("--beta", default="0.7", help="exponent of (1-k^2 x^2)")
    common.add_argument("--ksq", default="0.5", help="k^2 in [0, 1]")
    common.add_argument("--n-max", type=int, default=10)
    common.add_argument("--digits", default=None, help=f"integer or 'auto' (default: ${ENV_DIGITS} or auto)")
    common.add_argument("--eq", default="all", help=f"comma list of {','.join(EQUATIONS)} or all")
    common.add_argument("--output", "-o", default=None)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--order", type=int, default=6, help="expansion order J for asym")
    sub = ap.add_subparsers(dest="command", required=True)
    for c in COMMANDS:
        sub.add_parser(c, parents=[common])
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    fmt = args.format or ("csv" if args.command in ("moments", "recurrence") else "json")
    cfg = RunConfig(command=args.command, alpha=args.alpha, beta=args.beta, ksq=args.ksq,
                    n_max=args.n_max, digits=args.digits,
                    eq_filter=[e.strip() for e in args.eq.split(",") if e.strip()],
                    output=args.output, format=fmt, order=args.order)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

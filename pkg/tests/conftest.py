from functools import lru_cache

import pytest

from elliptic_op import opseq
from elliptic_op.moments import Params

REES = ("-1/2", "-1/2", "1/2")
GENERIC = ("0.3", "0.7", "0.5")
STANDARD = (REES, GENERIC, ("-0.2", "1.5", "0.9"))


@lru_cache(maxsize=None)
def sequence(alpha, beta, ksq, digits, N):
    return opseq.build_sequence(Params(alpha, beta, ksq, digits), N)


@lru_cache(maxsize=None)
def aux(alpha, beta, ksq, digits, N):
    return opseq.aux_from_sequence(sequence(alpha, beta, ksq, digits, N))


@pytest.fixture(scope="session")
def seq_cache():
    return sequence




ACCEPTANCE = {}


def record(criterion: int, ok: bool, detail: str):
    ACCEPTANCE[criterion] = (ok, detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

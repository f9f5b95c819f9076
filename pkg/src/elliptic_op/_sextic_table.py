"""Coefficient table of the degree-6 relation among beta_{n+1}, beta_n, beta_{n-1}.

Keys are exponent triples (p, q, r) of ``beta_{n+1}^p beta_n^q beta_{n-1}^r``.
Each value is a polynomial in ``a`` (alpha), ``b`` (beta), ``q`` (k^2) and
``n`` written in Python syntax, with ``S = a + b + n``.  Integer literals are
read as exact rationals by :func:`coefficient`, so ``2/9`` means two ninths.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache

TABLE = {
    (0, 0, 0): "(q-1)**2*n*(n+2*a)*(n+2*b)*(n+2*a+2*b)",
    (0, 1, 0): (
        "a**2*(-3-4*b**2+4*a**2)*(q+1)*(q-1)**2*(2*S-3)*(2*S+3)*S**2"
        " - 2/9*(4*a**2-1)*(a**2-b**2)*(q+1)*(q-1)**2*(2*S-3)*(2*S+3)*(2*S-1)*(2*S+1)"
        " - 1/9*(4*a**4-4*a**2*b**2-19*a**2-8*b**2+18)*(q+1)*(q-1)**2*(2*S-1)*(2*S+1)*S**2"
        " + 2*(q+1)*S**2"
        " - (a**2-b**2)*(16*n*a+16*a*b+1+16*n*b+8*n**2)*(q-1)**2"
        " + (4*a*b+2*n**2-b**2+5*a**2+4*n*a+4*n*b)*(q-1)*(q+1)"
    ),
    (0, 1, 1): (
        "8*q*(S-3/2)*((q-1)**2*S**3 + 1/2*(q**2+1)*S**2"
        " - (a**2+b**2)*(q-1)**2*S + 1/2*(q**2-1)*(a**2-b**2))"
    ),
    (1, 1, 0): (
        "8*q*(S+3/2)*((q-1)**2*S**3 - 1/2*(q**2+1)*S**2"
        " - (q-1)**2*(a**2+b**2)*S - 1/2*(q**2-1)*(a**2-b**2))"
    ),
    (0, 2, 0): (
        "-8*(q**2+1)*(q-1)**2*S**4 + 24*(q+1)**2*(q-1)**2*S**4"
        " - 7*(q**2+1)*(q+1)**2*S**2"
        " + (q**2+1)*(q-1)**2*S**2*(8*a**2+8*b**2+3)"
        " + 16*(q+1)*S**2*(q-1)**2*(q**2+1)*(a**2-b**2)"
        " - 4*(q+1)**2*(q-1)**2*(4*q*(a**2-b**2)+6*(a**2+b**2)+1)*S**2"
        " + 9/8*(q**2+1)*(q+1)**2"
        " - 6*(q-1)*(q+1)**2*(q**2+1)*(a**2-b**2)"
        " + 1/8*(q**2+1)*(q-1)**2*(8*a**2+8*b**2-1)**2"
        " - 2*(q+1)*(q-1)**2*(q**2+1)*(a**2-b**2)*(4*a**2+4*b**2+1)"
        " + 1/4*(q**2-1)**2*(32*q*(a**2-b**2) - 8*(a**2+b**2) - 64*a**2*b**2"
        " + 32*q*(a**4-b**4) - 1)"
    ),
    (1, 1, 1): "-8*q**2*(S+3/2)*(S-3/2)*((q+1)*S**2 + (q-1)*(a**2-b**2))",
    (0, 3, 0): (
        "-64*q*(1/8*(q+1)*(8*q**2-15*q+8)*S**4 + 9/32*(q+1)*(q**2+1)"
        " + 3/64*(q+1)*(q-1)**2*(11*q*(a**2-b**2) - 8*(a**2+b**2) - 2)"
        # linear factor (a**2-b**2) here, confirmed by resultant elimination
        " - 3/64*(q**2+1)*(q-1)*(11*q+8)*(a**2-b**2)"
        " - 65/64*(q**2+1)*(q+1)*S**2"
        " - 1/64*(q+1)*(q-1)**2*S**2*(36*q*(a**2-b**2)+32*(a**2+b**2)-1)"
        " + 17/32*S**2*(q-1)**2*(q**2+1)*(a**2-b**2)"
        " + 1/32*(q**4-1)*S**2*(a**2-b**2))"
    ),
    (1, 2, 0): (
        "-32*q*(S+3/2)*(-(q+1)*(q-1)**2*(a**2+1/4)*S"
        " - 1/8*(q**2-1)*S*(a**2-b**2+2)"
        " + 7/8*(q-1)**2*S*(a**2-b**2)"
        " - 1/4*(q+1)*(S-3/2)"
        " - 1/8*(q+1)*(q-1)**2*(4*a**2-1)"
        " - 1/16*(q**2-1)*(13*a**2-13*b**2-6)"
        " - 5/16*(q-1)**2*(a**2-b**2)"
        " - 1/8*(q+1)*(4*q**2+5*q+4)*S**2"
        " + 1/4*(q+1)*(4*q**2-9*q+4)*S**3)"
    ),
    (0, 2, 1): (
        "-32*q*(S-3/2)*(1/4*(q+1)*(4*q**2-9*q+4)*S**3"
        " + 1/8*(q+1)*(4*q**2+5*q+4)*S**2"
        " + 1/8*(q**2-1)*(q*(4*a**2-1)+5*a**2-9*b**2-2)"
        " - 7/4*(q-1)*(a**2-b**2)*(S+5/14)"
        " - 1/4*(q**2-1)*(q*(4*a**2+1)-7*a**2+3*b**2)*S"
        " - 1/4*(q+1)*(S+3/2))"
    ),
    (1, 2, 1): "32*q**2*(S+3/2)*(S-3/2)*((S+1/2)*(S-1/2)*(2*q**2+q+2) - q/2)",
    (0, 2, 2): (
        "16*q**2*(S-3/2)**2*((b+n+1/2)*(2*a+b+n+1/2)*q**2"
        " + (-3*S**2+a**2+b**2+1/2)*q + (a+n+1/2)*(a+2*b+n+1/2))"
    ),
    (2, 2, 0): (
        "16*q**2*(S+3/2)**2*((b+n-1/2)*(2*a+b+n-1/2)*q**2"
        " + (-3*S**2+a**2+b**2+1/2)*q + (a+n-1/2)*(a+2*b+n-1/2))"
    ),
    (0, 4, 0): (
        "q**2*(32*(3*q**2-2*q+3)*S**4"
        " - 8*((4*a**2+22)*q**2+(21-4*a**2-4*b**2)*q+4*b**2+22)*S**2"
        " + 9/2*(q**2+1)*(q-1)*(8*a**2+8*b**2-1) + 99/2*(q+1)*(q**2+1)"
        " - 9*(q**2-1)*(4*q*(a**2+b**2+5/4) + 4*(a**2-b**2)))"
    ),
    (1, 3, 0): (
        "32*q**2*(S+3/2)*((q**2-6*q+1)*S**3 - 9/8*(q**2+1)*(S-13/6)"
        " + 1/8*(q-1)*S*(8*q*a**2-8*b**2-q+1)"
        " - 1/16*(q-1)*(40*q*a**2-40*b**2+17*(q-1))"
        " - 1/2*(7*q**2+12*q+7)*S**2)"
    ),
    (0, 3, 1): (
        "32*q**2*(S-3/2)*(-9/8*(q+1)*(S+13/6)"
        " - 1/2*(q**2-1)*S*(b**2-a**2+9/8)"
        " + 1/16*(q-1)**2*S*(8*a**2+8*b**2-11) + (q**2-6*q+1)*S**3"
        " + 1/16*(q-1)*(40*q*a**2-22*q-40*b**2-17)"
        " + 1/2*(7*q**2+12*q+7)*S**2)"
    ),
    (1, 3, 1): "-128*q**3*(q+1)*(S+3/2)*(S-3/2)*(S**2-3/4)",
    (1, 2, 2): "-2*q**3*(q+1)*(2*S-3)**2*(2*S+1)*(2*S+3)",
    (2, 2, 1): "-2*q**3*(q+1)*(2*S-3)*(2*S+3)**2*(2*S-1)",
    (0, 4, 1): "32*q**3*(q+1)*(S-3/2)*(S**2*(S-19/2) + 11/4*S + 39/8)",
    (1, 4, 0): "32*q**3*(q+1)*(S+3/2)*(S**2*(S+19/2) + 11/4*S - 39/8)",
    (0, 3, 2): "2*q**3*(q+1)*(2*S-3)**2*(2*S+1)*(6*S-7)",
    (2, 3, 0): "2*q**3*(q+1)*(2*S+3)**2*(6*S+7)*(2*S-1)",
    (0, 5, 0): "-64*q**3*(q+1)*(S+3/2)*(S-3/2)*((S+1/2)*(S-1/2)-1/2)",
    (2, 4, 0): "-112*q**4*(S+3/2)**2*(S**2+11/7*S-33/28)",
    (0, 4, 2): "-112*q**4*(S-3/2)**2*(S*(S-11/7)-33/28)",
    (3, 3, 0): "-4*q**4*(2*S-1)*(2*S+3)**3",
    (0, 3, 3): "-4*q**4*(2*S-3)**3*(2*S+1)",
    (1, 4, 1): "320*q**4*(S+3/2)*(S-3/2)*(S**2-13/20)",
    (1, 3, 2): "2*q**4*(2*S-3)**2*(2*S+3)**2",
    (2, 3, 1): "2*q**4*(2*S-3)**2*(2*S+3)**2",
    (2, 2, 2): "q**4*(2*S-3)**2*(2*S+3)**2",
    (1, 5, 0): "-32*q**4*(S+3/2)**2*(S*(S+5)-15/4)",
    (0, 5, 1): "-32*q**4*(S-3/2)**2*(S*(S-5)-15/4)",
    (0, 6, 0): "q**4*(2*S-3)**2*(2*S+3)**2",
}


class _Rationalize(ast.NodeTransformer):
    def visit_Constant(self, node):
        if isinstance(node.value, int):
            return ast.copy_location(
                ast.Call(ast.Name("F", ast.Load()), [node], []), node)
        return node


@lru_cache(maxsize=None)
def _compiled(key):
    tree = ast.parse(TABLE[key], mode="eval")
    tree = ast.fix_missing_locations(_Rationalize().visit(tree))
    return compile(tree, f"<c{key}>", "eval")


def coefficient(key, n, a, b, q) -> Fraction:
    """Exact value of c_{p,q,r} at rational parameters."""
    a, b, q, n = Fraction(a), Fraction(b), Fraction(q), Fraction(n)
    env = {"F": Fraction, "a": a, "b": b, "q": q, "n": n, "S": a + b + n}
    return eval(_compiled(key), {"__builtins__": {}}, env)


def coefficients(n, a, b, q) -> dict:
    return {key: coefficient(key, n, a, b, q) for key in TABLE}

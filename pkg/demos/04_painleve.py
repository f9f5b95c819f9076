"""
Evolution in k^2: Toda flow and the sigma form
==============================================

Finite differences in k^2 on a grid of sequences, Richardson-extrapolated.
The sigma form needs a third derivative, so it uses a 9-point stencil and
extra working digits.
"""

from fractions import Fraction

import mpmath

from elliptic_op import Params, ShiftedParams
from elliptic_op import evolution as E

grid = E.build_grid(Params("0.3", "0.7", "0.5", 80), 8)
for n in (2, 5):
    for rep in E.toda_check(grid, n):
        print(f"{rep.name} n={n}: relative {mpmath.nstr(rep.relative, 3)}"
              f"  difference error {mpmath.nstr(rep.diff_error, 3)}")
    rep = E.H_n_check(grid, n)
    print(f"H_n  n={n}: relative {mpmath.nstr(rep.relative, 3)}  passed={rep.passed}")

# the shifted weights on [0, 1]: sigma form of the log-derivative of D_n
for a in ("-1/2", "1/2"):
    g = E.build_grid(ShiftedParams(a, "0.3", "0.7", "0.5", 80), 5,
                     h=Fraction(1, 10**12), stencil=9)
    s = E.sigma_eval(g, 4)
    rep = E.sigma_form_residual(s)
    print(f"sigma form a={a}: relative {mpmath.nstr(rep.relative, 3)}  passed={rep.passed}")

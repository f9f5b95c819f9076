"""
Moments, recurrence coefficients and ladder variables
=====================================================

Build the monic orthogonal polynomials of (1-x^2)^a (1-k^2 x^2)^b from
their moments and look at the recurrence data.
"""

import mpmath

from elliptic_op import Params
from elliptic_op import moments, opseq

# parameters are stored exactly; strings avoid binary rounding
p = Params("0.3", "0.7", "0.5", digits=50)

# the first few moments, by the closed 2F1 form
with p.ctx.workdps():
    for j in range(0, 7, 2):
        print(f"mu_{j} =", mpmath.nstr(moments.moment_sym(j, p), 30))

# the factorization raises the working digits with N
seq = opseq.build_sequence(p, 20)
print("working digits:", seq.digits)

for n in (1, 2, 5, 10, 20):
    print(f"beta_{n:<2} =", mpmath.nstr(seq.beta[n], 25),
          "  p1 =", mpmath.nstr(seq.p1[n], 20))

# beta_n tends to 1/4 on [-1, 1]
print("beta_20 - 1/4 =", mpmath.nstr(seq.beta[20] - mpmath.mpf(1) / 4, 5))

# the determinant route agrees with the pivot ratio
print("|beta_10 - D11 D9 / D10^2| =", mpmath.nstr(abs(seq.beta[10] - seq.beta_from_D(10)), 3))

# ladder variables from closed-form rearrangement and from their integrals
aux = opseq.aux_from_sequence(seq)
R, r, Rs, rs = opseq.aux_from_integrals(seq, 4)
print("R_4 closed   =", mpmath.nstr(aux.R[4], 25))
print("R_4 integral =", mpmath.nstr(R, 25))
print("r_4 closed   =", mpmath.nstr(aux.r[4], 25))
print("r_4 integral =", mpmath.nstr(r, 25))

# P_4 and its derivatives at a point
x = mpmath.mpf("0.37")
print("P_4(0.37), P_4', P_4'' =",
      [mpmath.nstr(opseq.eval_poly(seq, 4, x, d), 15) for d in (0, 1, 2)])

"""
Large-n behaviour of beta_n, p1(n) and the Hankel determinant
=============================================================

Compare exact recurrence data at n = 60 against the 1/n expansions.
"""

import mpmath

from elliptic_op import Params
from elliptic_op import asymptotics as A
from elliptic_op import opseq

p = Params("0.3", "0.7", "0.5", digits=60)
seq = opseq.build_sequence(p, 60)
model = A.build_model(p)

# extra terms help until the next coefficient is tiny (a_6 here)
for J in range(2, 7):
    err = abs(seq.beta[60] - A.beta_asym(model, 60, J))
    print(f"J = {J}: |beta_60 - expansion| = {mpmath.nstr(err, 3)}")

print("p1(60) exact     ", mpmath.nstr(seq.p1[60], 20))
print("p1(60) expansion ", mpmath.nstr(A.p1_asym(model, 60), 20))

# log D_n, including the constant E from Barnes G values
print("log D_60 exact     ", mpmath.nstr(seq.log_D(60), 20))
print("log D_60 expansion ", mpmath.nstr(A.log_dn_asym(model, 60), 20))
print("E from the closed form ", mpmath.nstr(A.E_theorem(p), 20))
print("E from the symbol      ", mpmath.nstr(A.E_symbol(p), 20))

# Toeplitz plus Hankel determinant against D_n
rep = A.toeplitz_hankel_check(p, 6)
print("Toeplitz+Hankel vs D_6: relative", mpmath.nstr(rep.relative, 3))

"""High-precision orthogonal polynomials for the weight (1-x^2)^a (1-k^2 x^2)^b.

Submodules
----------
specialfn    Gamma, 2F1, Barnes G and tanh-sinh quadrature.
moments      Moment sequences of the symmetric and shifted weights.
opseq        Recurrence data and ladder variables from moments.
diffeq       Residuals of the difference and differential equations.
asymptotics  Large-n expansions and determinant constants.
evolution    k^2-derivative identities and the sigma-form check.
cli          Command-line front end.
"""

from . import errors
from .specialfn import PrecisionContext
from .moments import Params, ShiftedParams

__all__ = ["errors", "PrecisionContext", "Params", "ShiftedParams"]
__version__ = "0.1.0"

"""Exception hierarchy shared by all modules."""


class EllipticOPError(Exception):
    """Base class for errors raised by this package."""


class DomainError(EllipticOPError, ValueError):
    """An argument lies outside the domain of an operation."""


class PoleError(DomainError):
    """Evaluation at a pole (e.g. Gamma at a non-positive integer)."""


class RemovableSingularity(DomainError):
    """A closed form hits 0/0; the caller should use another route."""


class SingularPoint(DomainError):
    """A coefficient vanishes at the requested evaluation point."""


class NoConvergence(EllipticOPError, ArithmeticError):
    """An iterative method exhausted its budget."""


class PrecisionExhausted(EllipticOPError, ArithmeticError):
    """Working precision is too low for the conditioning of the problem."""


class NegativeRadicand(EllipticOPError, ArithmeticError):
    """A square root of a negative quantity was requested."""


class SingularElimination(EllipticOPError, ArithmeticError):
    """The elimination denominator K_n vanishes to working precision."""


class BranchAmbiguity(EllipticOPError, ArithmeticError):
    """Two branch choices disagree and neither reproduces the reference."""


class StepTooLarge(EllipticOPError, ArithmeticError):
    """Finite-difference extrapolation defect exceeds its tolerance."""

"""Exception hierarchy for psicong."""


class PsiCongError(Exception):
    """Base class for every error raised by psicong"""


class ContextMismatch(PsiCongError, ValueError):
    """Operands live in different rings (modulus exponent, epsilon or gamma)"""


class DivideNotExact(PsiCongError, ArithmeticError):
    """A coefficient is not divisible by the requested power of 3"""


class SolverError(PsiCongError):
    """Raised when a derivation cannot be completed"""


class ShapeMismatch(SolverError):
    """The equation is outside the quadratic shape the solver handles"""


class NonUnique(SolverError):
    """The equation does not pin down a unique power series modulo 3^e"""

    def __init__(self, index, e):
        super().__init__(f"coefficient {index} is not determined modulo 3^{e}")
        self.index = index
        self.e = e


class Inconsistent(SolverError):
    """No power series satisfies the equation modulo 3^e"""

    def __init__(self, index, e):
        super().__init__(f"no consistent coefficient at index {index} modulo 3^{e}")
        self.index = index
        self.e = e


class DivisibilityFailure(SolverError):
    """A right-hand side in the iteration is not divisible as required"""

    def __init__(self, beta, power, detail=""):
        msg = f"divisibility failed at step beta={beta}, Psi power {power}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.beta = beta
        self.power = power


class BranchAmbiguous(SolverError):
    """Both sign branches agree with the series solution on the checked prefix"""


class SectionDenominator(SolverError):
    """A denominator could not be moved onto the sectioned base"""


class UnsupportedId(PsiCongError, KeyError):
    """Unknown sequence identifier, or one without a functional equation"""


class NoFixture(PsiCongError, LookupError):
    """No printed representation exists for the sequence at this modulus"""


class Untabulated(PsiCongError, LookupError):
    """No digit rule is tabulated for the requested power and modulus"""


class KernelIntegrality(PsiCongError, AssertionError):
    """An Eulerian kernel polynomial failed its integrality checks"""

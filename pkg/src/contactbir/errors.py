"""Exception taxonomy for the workbench.

Every failure the library can signal deliberately derives from WorkbenchError.
InputError covers malformed or out-of-domain user input (CLI exit 2),
MathFalse covers honest negative verdicts surfaced as exceptions (CLI exit 1),
InternalCheckError covers redundant-computation mismatches that should never
happen (CLI exit 3).
"""


class WorkbenchError(Exception):
    pass


class InputError(WorkbenchError):
    pass


class MathFalse(WorkbenchError):
    pass


class InternalCheckError(WorkbenchError):
    pass


# -- algebra ---------------------------------------------------------------

class DivisionByZero(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class InvalidDivisor(InputError):
    """Valuation divisor is constant or not squarefree."""


class ArityError(InputError):
    pass


class IndeterminateComposition(InputError):
    """A substitution produced an identically-zero denominator."""


# -- forms -----------------------------------------------------------------

class DegreeOverflow(InputError):
    """Wedge or exterior derivative would exceed form degree 3."""


class ChartMismatch(InputError):
    """Mixed affine-chart and homogeneous-chart objects."""


# -- maps and contact analysis ----------------------------------------------

class NonDominant(InputError):
    """Jacobian determinant vanishes identically."""


class InconsistentPDE(InternalCheckError):
    """The three defining PDE equations disagree; implementation bug."""


class NotContact(MathFalse):
    pass


class KleinFamily(MathFalse):
    """The directional invariant is the infinity tag, so no contact field exists."""


class HInftyMoved(InputError):
    """The hyperplane at infinity is neither preserved nor contracted.

    A genuine contact map cannot do this, so the input data is suspect.
    """


class AllSamplesIndeterminate(InputError):
    """Every sampled point hit the base locus; rank evidence unavailable."""


# -- exactness and lifts -----------------------------------------------------

class NotClosed(MathFalse):
    pass


class NotEtaPreserving(MathFalse):
    pass


class NotExact(MathFalse):
    """Raised by the lift when the defining 1-form has no rational potential.

    Carries the ExactnessResult whose remainder is the witness.
    """

    def __init__(self, result):
        self.result = result
        super().__init__("1-form is not exact; witness remainder recorded")


class NotPeriodic(MathFalse):
    pass


class NotPolynomialAutomorphism(MathFalse):
    pass


# -- family constructors -----------------------------------------------------

class DegenerateEmbedding(InputError):
    pass


class SingularFraction(InputError):
    """Moebius parameters with vanishing determinant."""


class UpsilonViolation(InputError):
    """Quadratic-map parameters break a required constraint."""

    def __init__(self, constraint):
        self.constraint = constraint
        super().__init__(f"parameter constraint violated: {constraint}")


class ZeroScale(InputError):
    pass


# -- dynamics ----------------------------------------------------------------

class WindowTooSmall(InputError):
    pass


class NotPeriodicWindow(MathFalse):
    pass


# -- parsing ------------------------------------------------------------------

class ParseError(InputError):
    """Syntax error with a 0-based character position into the input."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at position {position})")

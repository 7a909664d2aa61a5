"""Exception types shared across the package."""


class EffortBoundExceeded(RuntimeError):
    """A factorization or continued-fraction search hit its effort bound.

    The bounds are deliberate: inputs are user-supplied labels, small by
    construction, and an explicit failure beats an open-ended computation.
    """


class TheoremViolation(RuntimeError):
    """A machine check contradicted a certified classification law.

    Raised when a cross-check that must hold for every admissible input
    fails.  Any occurrence is a reportable event, not a recoverable error:
    it means either corrupted input validation or a genuine defect.
    """

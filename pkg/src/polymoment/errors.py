"""Exception hierarchy.

Exact-arithmetic failures and invalid input derive from :class:`PolyMomentError`
directly; anything caused by floating point tracking derives from
:class:`NumericFailure` so callers (and the CLI exit codes) can tell the two apart.
"""


class PolyMomentError(Exception):
    pass


class InvalidInstance(PolyMomentError, ValueError):
    pass


class ParseError(InvalidInstance):
    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            where = f" in {text!r}" if text is not None else ""
            message = f"{message} (at position {position}{where})"
        super().__init__(message)


class FieldMismatch(PolyMomentError, TypeError):
    pass


class NonInvertible(PolyMomentError, ZeroDivisionError):
    pass


class NotMonic(PolyMomentError, ValueError):
    pass


class DegreeNotDivisible(PolyMomentError, ValueError):
    pass


class NotIndecomposable(PolyMomentError, ValueError):
    pass


class PreconditionUnverified(PolyMomentError):
    pass


class NumericFailure(PolyMomentError, ArithmeticError):
    pass


class RootIsolationFailure(NumericFailure):
    pass


class NoConvergence(NumericFailure):
    pass


class PathTooClose(NumericFailure):
    pass


class TrackingBreakdown(NumericFailure):
    pass


class AmbiguousAssociation(NumericFailure):
    pass


class AmbiguousCluster(NumericFailure):
    pass

"""Exception types shared across the package."""


class ThinraysError(Exception):
    """Base class for all library errors."""


class ValidationError(ThinraysError):
    """Input data violates a documented invariant."""


class ParseError(ValidationError):
    """Problem file is syntactically or structurally malformed."""


class DimensionMismatch(ThinraysError):
    """Operands do not share the required dimension."""


class MismatchedField(ThinraysError):
    """Field elements belong to different generators."""


class DivisionByZero(ThinraysError, ZeroDivisionError):
    """Exact division by a zero field element."""


class NotPointed(ThinraysError):
    """Operation requires a pointed polyhedron."""


class DimensionTooLarge(ThinraysError):
    """Desk-scale operation called above its supported dimension."""


class NoBlockingRow(ThinraysError):
    """Facet projection has no row decreasing along the direction."""


class WrongCase(ThinraysError):
    """Epsilon shrink invoked for a case whose leading coefficient is not negative."""


class NotUnboundedOnRay(ThinraysError):
    """Certificate requested for a ray along which the objective does not tend to -inf."""


class EmptyIntersection(ThinraysError):
    """No integer point of the polyhedron inside the search box."""


class BudgetExhausted(ThinraysError):
    """Search budget ran out before a certified point was found.

    The lemma underlying the search guarantees existence, so this signals an
    insufficient budget rather than infeasibility.
    """

    def __init__(self, message, q_max=None, partial=None):
        super().__init__(message)
        self.q_max = q_max
        self.partial = partial

"""Exception hierarchy shared by the solver, polytope, and simulation layers."""


class SafegamesError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(SafegamesError, ValueError):
    """A vector or matrix has the wrong shape for the requested operation."""


class OutOfRange(SafegamesError, ValueError):
    """A scalar parameter lies outside its documented domain."""


class DegenerateScale(SafegamesError):
    """Risk rescaling is undefined: the matrix minimum is not below the maximin value."""


class NumericalFailure(SafegamesError):
    """The simplex solver could not make progress within its iteration cap."""


class UnboundedRegion(SafegamesError):
    """Vertex enumeration detected a recession ray; the feasible set is not a polytope."""


class InfeasibleRegion(SafegamesError):
    """An optimization over an empty feasible region was requested."""


class EmptyRestriction(SafegamesError):
    """The opponent cannot meet their payoff requirement; their strategy set is empty."""


class InfeasibleRequirement(SafegamesError):
    """No mixture satisfies the minimum-payoff constraint."""


class Not2x2(SafegamesError, ValueError):
    """The operation is defined only for 2x2 payoff matrices."""


class ParseError(SafegamesError, ValueError):
    """A game file is malformed. Carries field context in the message."""


class DimensionError(ParseError):
    """Payoff matrices in a game file are ragged or have mismatched shapes."""

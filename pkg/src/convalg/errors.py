"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: :class:`ParseError` is 2,
:class:`NumericOverflowError` is 4, any other :class:`ConvAlgError` is 3.
"""


class ConvAlgError(Exception):
    """Base class for precondition violations."""


class ParseError(ConvAlgError, ValueError):
    """Malformed serialized input."""


class MonoidMismatchError(ConvAlgError, ValueError):
    pass


class ElementError(ConvAlgError, ValueError):
    """An element does not belong to the monoid it is used with."""


class CoefficientError(ConvAlgError, ValueError):
    pass


class UnsupportedOperationError(ConvAlgError):
    """Operation requires a property (e.g. finite fibers) the monoid lacks."""


class UnboundedCharacterError(ConvAlgError, ValueError):
    pass


class DimensionMismatchError(ConvAlgError, ValueError):
    pass


class DegenerateConeError(ConvAlgError, ValueError):
    pass


class GridMismatchError(ConvAlgError, ValueError):
    pass


class NumericOverflowError(ConvAlgError, OverflowError):
    pass

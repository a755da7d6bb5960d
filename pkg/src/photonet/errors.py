"""Exception hierarchy shared across the package."""


class PhotonetError(Exception):
    """Base class for all library errors."""


class TypeMismatch(PhotonetError, TypeError):
    pass


class DaggerUndefined(PhotonetError):
    pass


class EmptySum(PhotonetError, ValueError):
    pass


class UnknownSymbol(PhotonetError, KeyError):
    pass


class WireReuse(PhotonetError):
    pass


class WireDropped(PhotonetError):
    pass


class NormError(PhotonetError, ValueError):
    pass


class TableIncomplete(PhotonetError, ValueError):
    pass


class RangeError(PhotonetError, ValueError):
    pass


class DimensionMismatch(PhotonetError, ValueError):
    pass


class MissingInternalState(PhotonetError, ValueError):
    pass


class InflationUnsupported(PhotonetError):
    pass


class SymbolicDiagram(PhotonetError):
    pass


class BackendIneligible(PhotonetError):
    pass


class CapOverflow(PhotonetError):
    """A generator produced a basis state outside its forward light-cone."""


class ShapeMismatch(PhotonetError, ValueError):
    pass


class NotAState(PhotonetError, ValueError):
    pass


class TooLarge(PhotonetError):
    pass


class NotSquare(PhotonetError, ValueError):
    pass


class PhotonNumberMismatch(PhotonetError, ValueError):
    pass


class TooManyOutcomes(PhotonetError):
    pass


class CircuitFileError(PhotonetError, ValueError):
    """A circuit file that does not parse; ``index`` names the offending box."""

    def __init__(self, msg, index=None):
        super().__init__(msg if index is None else f"box {index}: {msg}")
        self.index = index

"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class WormholeError(Exception):
    """Base class for every error raised by this package."""


class BoundaryMismatch(WormholeError, ValueError):
    pass


class InadmissibleTriple(WormholeError, ValueError):
    pass


class DiagramError(WormholeError, ValueError):
    """A diagram violates a structural invariant.  ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DSLSyntaxError(DiagramError):
    pass


class PositionOutOfRange(DiagramError):
    pass


class ColorMismatch(DiagramError):
    pass


class InadmissibleVertex(DiagramError):
    pass


class DuplicateDiskId(DiagramError):
    pass


class NotClosed(WormholeError, ValueError):
    pass


class HasDiskGates(WormholeError, ValueError):
    pass


class NotSingleWormhole(WormholeError, ValueError):
    pass


class NonLaurentResult(WormholeError, ArithmeticError):
    """A value that must lie in Z[A, A^-1] did not; indicates a convention bug."""


class SingularBasis(WormholeError, ArithmeticError):
    pass


class DenominatorZero(WormholeError, ArithmeticError):
    pass


class ColorOutOfRange(WormholeError, ValueError):
    pass

"""Exception hierarchy for knotkit."""


class KnotKitError(Exception):
    """Base class for all domain errors raised by knotkit."""


class UndefinedPair(KnotKitError):
    """An up/down action was requested outside the table's defined domain."""


class NoPreimage(KnotKitError):
    """An inverse action does not exist at the requested element."""


class BadParameter(KnotKitError):
    """A constructor or operation received an out-of-range argument."""


class NotTotal(KnotKitError):
    """The operation requires a totally defined table."""


class MalformedInput(KnotKitError):
    """Structurally invalid input data."""


class InconsistentRotation(MalformedInput):
    """The dart involution is not a perfect matching of the vertex darts."""


class BadStrandPairing(MalformedInput):
    """Opposite darts at a vertex do not form oriented through-strands."""


class Disconnected(KnotKitError):
    """The operation requires a connected diagram."""


class DegreeTooLow(KnotKitError):
    """Boundary of a chain whose degree admits no boundary."""


class TheoryMismatch(KnotKitError):
    """The homology theory is not defined for this table."""


class NotACycle(KnotKitError):
    """A chain expected to be a cycle has nonzero boundary."""


class NotWholeColoured(KnotKitError):
    """A whole colouring is inconsistent with the diagram."""


class WrongTable(KnotKitError):
    """The operation is only defined for a specific table."""

"""Exception types shared across the toolkit."""


class GalinvError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(GalinvError):
    pass


class RingMismatch(GalinvError):
    pass


class SingularLimit(GalinvError):
    """A Laurent matrix entry has a pole at eps = 0.

    Attributes carry the offending position and the pole order so contraction
    failures are informative rather than silent.
    """

    def __init__(self, row, col, pole_order, entry=None, context=""):
        self.row = row
        self.col = col
        self.pole_order = pole_order
        self.entry = entry
        self.context = context
        msg = "entry (%d, %d) has a pole of order %d at eps=0" % (row, col, pole_order)
        if context:
            msg = "%s: %s" % (context, msg)
        super().__init__(msg)


class NotNilpotent(GalinvError):
    pass


class NotOrthogonal(GalinvError):
    pass


class UnknownLabel(GalinvError):
    pass


class NotARep(GalinvError):
    pass


class LayoutMismatch(GalinvError):
    pass


class DomainError(GalinvError):
    """Numeric constitutive evaluation outside the radicand's domain."""


class ParseError(GalinvError):
    def __init__(self, message, line, col):
        self.line = line
        self.col = col
        super().__init__("line %d, col %d: %s" % (line, col, message))


class SnapshotError(GalinvError):
    pass


class BadMagic(SnapshotError):
    pass


class Truncated(SnapshotError):
    pass


class NonZeroMean(GalinvError):
    """Poisson right-hand side has a nonzero mean on the torus."""


class SourceError(GalinvError):
    """Source specification is inconsistent with the system's constraints."""

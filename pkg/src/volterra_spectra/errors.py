class VolterraError(Exception):
    """Base class for errors raised by this package."""


class CapacityExceeded(VolterraError, ValueError):
    """A size or degree cap was exceeded (power, grid size, polynomial degree)."""


class StructureMismatch(VolterraError, ValueError):
    """A matrix was passed to a routine that requires a different structure tag."""


class NumericalBreakdown(VolterraError, ArithmeticError):
    """A floating-point computation lost too much accuracy to be trusted."""


class InternalError(VolterraError, RuntimeError):
    """An invariant that should hold by construction did not."""

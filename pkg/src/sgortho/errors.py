"""Exception types shared across the package."""


class ConsistencyError(RuntimeError):
    """Two exact computations of the same quantity disagreed (internal bug trap)."""


class MathematicalAssumptionError(RuntimeError):
    """A runtime mathematical assumption failed (e.g. a normal derivative
    that must be nonzero for the symmetric-family recurrence vanished)."""

"""Shared exception types."""


class ParameterError(ValueError):
    """Inputs violate an operation's preconditions (shape/range mismatch)."""


class CapacityError(RuntimeError):
    """An exhaustive operation would exceed its configured budget."""


class ProtocolFault(RuntimeError):
    """A protocol broke its own contract during execution (wrong message
    length, inconsistent decisions)."""


class ConstructionFault(RuntimeError):
    """A constructed object failed its mandatory self-verification."""

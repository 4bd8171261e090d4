"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside an operation's mathematical domain or preconditions."""


class CapacityError(RuntimeError):
    """Problem size exceeds the supported desk-scale capacity."""


class StructuralError(ValueError):
    """A matrix lacks the structure an operation requires; the message names the spot."""

"""Shared exception types."""


class ParameterError(ValueError):
    """Requested parameters lie outside the range a construction supports."""


class ConstructionError(RuntimeError):
    """A construction's internal verification failed (bug guard, not user error)."""

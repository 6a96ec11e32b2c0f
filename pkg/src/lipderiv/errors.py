"""Shared exception types."""


class InputError(ValueError):
    """Malformed or inconsistent input data or configuration."""


class CapacityError(ValueError):
    """A request exceeds the exhaustive-computation size limits."""

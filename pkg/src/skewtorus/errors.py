"""Shared exception types."""


class NumericsError(ArithmeticError):
    """A numerical computation produced NaN or otherwise failed."""

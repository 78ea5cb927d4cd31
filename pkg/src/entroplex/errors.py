class ValidationError(ValueError):
    """An input violates a documented invariant (Hermiticity, trace, completeness...)."""


class DimensionError(ValidationError):
    """Operand dimensions are inconsistent."""

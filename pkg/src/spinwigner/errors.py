"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Matrix or vector dimensions are invalid or incompatible."""


class NumericValidationError(Exception):
    """A numerical contract was violated (Hermiticity, positivity, ...)."""


class NotHermitianError(NumericValidationError):
    """Input deviates from Hermiticity beyond tolerance."""


class NotPSDError(NumericValidationError):
    """Input has an eigenvalue below the positive-semidefinite tolerance."""


class DegeneratePerturbationError(NumericValidationError):
    """A perturbed state vector collapsed to numerical zero before renormalization."""


class InternalConsistencyError(NumericValidationError):
    """An internal invariant failed, indicating corrupted input or a bug."""

"""Exception types shared across the package."""


class CalculusError(Exception):
    """Base class for all ncdiff errors."""


class ShapeError(CalculusError):
    """Matrix or operator has the wrong shape for the requested operation."""


class ValidationError(CalculusError):
    """Input data fails a structural requirement."""


class TracelessViolation(ValidationError):
    """A basis element has a nonzero trace."""

    def __init__(self, index, trace_abs):
        self.index = index
        self.trace_abs = trace_abs
        super().__init__(
            f"basis element {index} is not traceless (|tr| = {trace_abs:.3e})"
        )


class DependentBasis(ValidationError):
    """The supplied matrices are linearly dependent."""


class ConditioningError(ValidationError):
    """A Gram matrix is too ill-conditioned for a meaningful dual basis."""


class DependentRelations(ValidationError):
    """Relation matrix columns are not linearly independent."""


class InvalidRelation(ValidationError):
    """A user-supplied relation column is not in the detected kernel."""

    def __init__(self, column, residual):
        self.column = column
        self.residual = residual
        super().__init__(
            f"relation column {column} is not in the kernel "
            f"(residual norm {residual:.3e})"
        )


class SingularTransform(ValidationError):
    """The conjugating matrix is numerically singular."""


class DegreeError(CalculusError):
    """Form degree outside the range supported by the tower."""


class ConfigError(CalculusError):
    """Mismatched or inconsistent configuration of calculi."""

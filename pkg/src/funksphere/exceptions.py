"""Exception types raised by funksphere."""


class FunkSphereError(Exception):
    """Base class for all package errors."""


class DomainError(FunkSphereError, ValueError):
    """An argument lies outside the domain of the operation."""


class BandLimitError(FunkSphereError, ValueError):
    """Band limits of the operands are incompatible."""


class GridMismatchError(FunkSphereError, ValueError):
    """Two fields live on different grids."""


class IllPosedError(FunkSphereError, ArithmeticError):
    """A multiplier required for inversion is numerically zero."""


class KernelViolationError(FunkSphereError, ValueError):
    """Input carries mass on channels annihilated by the operator."""


class NonTangentialError(FunkSphereError, ValueError):
    """A vector field expected to be tangent has a radial component."""


class SubspaceViolationError(FunkSphereError, ValueError):
    """A tangent field has mass outside the expected Hodge subspace."""


class InconsistentDataWarning(UserWarning):
    """The two transforms handed to a reconstruction do not share a source."""


class FileFormatError(FunkSphereError, ValueError):
    """A coefficient, grid or config file could not be parsed."""

"""Exception hierarchy shared by all modules."""


class SuperGrassError(ValueError):
    """Base class for every error raised by the package."""


class IncompatibleRingsError(SuperGrassError):
    """Operands live over different variable tables."""


class ParityError(SuperGrassError):
    """An assignment or matrix entry has the wrong parity."""


class NonInvertibleError(SuperGrassError, ZeroDivisionError):
    """A denominator or matrix body is not invertible.

    ``determinant`` carries the vanishing body determinant when available.
    """

    def __init__(self, message, determinant=None):
        super().__init__(message)
        self.determinant = determinant


class ConjugationError(SuperGrassError):
    """Complex conjugation requested over a table without conjugate partners."""


class DimensionError(SuperGrassError):
    """Matrix shapes do not fit."""


class OverlapEmptyError(NonInvertibleError):
    """Two charts have an identically singular renormalization matrix."""


class ChartMismatchError(SuperGrassError):
    """Morphisms composed across non-matching charts."""


class MalformedLiftError(SuperGrassError):
    """A lift candidate does not have the required leading terms."""


class NotAnInvolutionError(SuperGrassError):
    """A projective matrix fails the cocycle condition g * conj(g) = lambda * 1."""

    def __init__(self, message, product=None):
        super().__init__(message)
        self.product = product


class CocycleError(SuperGrassError):
    """An element handed to a cohomology routine is outside its carrier or not a cocycle."""


class AtlasFormatError(SuperGrassError):
    """A serialized atlas or report cannot be parsed."""


class UnsupportedVersionError(AtlasFormatError):
    """A serialized file declares a format version this build cannot read."""

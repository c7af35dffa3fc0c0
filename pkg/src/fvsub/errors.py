"""Exception and warning types shared across the package."""


class FvsubError(Exception):
    """Base class for all package errors."""


class NonTriangular(FvsubError, ValueError):
    pass


class RepeatedEigenvalue(FvsubError, ValueError):
    pass


class DimensionMismatch(FvsubError, ValueError):
    pass


class ZeroPolynomial(FvsubError, ValueError):
    pass


class NoSignChange(FvsubError, ValueError):
    pass


class FaceNotInComplex(FvsubError, KeyError):
    pass


class FormatError(FvsubError, ValueError):
    pass


class ValidationError(FvsubError, ValueError):
    def __init__(self, findings):
        self.findings = list(findings)
        super().__init__("; ".join(str(f) for f in self.findings))


class UnsupportedDimension(FvsubError, ValueError):
    pass


class DimensionExceeded(FvsubError, ValueError):
    pass


class NonDominantEigenvalue(FvsubError, ArithmeticError):
    pass


class FactorizationTimeout(FvsubError, RuntimeError):
    """Raised when a denominator could not be classified; ``partial`` holds what was done."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class RealRootDeficit(UserWarning):
    """A polynomial expected to be real-rooted has fewer real roots than its degree."""

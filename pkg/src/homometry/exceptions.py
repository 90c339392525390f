class HomometryError(Exception):
    """Base class for all errors raised by this package."""


class RefinementTooLarge(HomometryError):
    """A common refinement of two combs would exceed the atoms-per-period guard."""


class NonTransformableFinitePart(HomometryError):
    """The finite part holds atoms away from the origin; its transform is not representable."""


class SchemaError(HomometryError, ValueError):
    """Malformed JSON input for a measure or phase assignment."""


class NotADiffraction(HomometryError):
    """Input is not pure point, real, positive and inversion symmetric."""


class IntensityMismatch(HomometryError):
    pass


class SymmetryViolation(HomometryError):
    """Phase assignment breaks A(0) > 0 or A(-k) = conj A(k)."""


class UnsupportedAssignment(HomometryError):
    pass


class NotAMeasure(HomometryError):
    """Requested a measure where only a formal (non-measure) series exists."""


class NonConvergent(HomometryError):
    pass

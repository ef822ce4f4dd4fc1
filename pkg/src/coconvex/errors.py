class GeometryError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInterior(GeometryError):
    pass


class Unbounded(GeometryError):
    pass


class InvalidLambda(GeometryError):
    pass


class DimensionMismatch(GeometryError):
    pass


class InvalidSpec(GeometryError):
    pass


class HeightNonpositive(GeometryError):
    pass


class NegativeValue(GeometryError):
    pass


class MissingFloor(GeometryError):
    pass


class UnboundedInteriorFacet(GeometryError):
    pass


class OmegaTouchesBoundary(GeometryError):
    pass


class AsymptoticMismatch(GeometryError):
    pass


class UnsharedNormals(GeometryError):
    pass


class NonpositiveScale(GeometryError):
    pass


class FUnsetOnAtom(GeometryError):
    pass


class InadmissibleStep(GeometryError):
    pass


class UniquenessViolation(GeometryError):
    """Equal surface measures but different sets; never expected."""


class InfeasibleSupport(GeometryError):
    pass


class NotIrreducible(GeometryError):
    pass


class DegenerateMeasure(GeometryError):
    pass


class NotACone(GeometryError):
    pass


class StagesNotNested(GeometryError):
    pass

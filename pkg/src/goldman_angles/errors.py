"""Exception hierarchy.

Each class carries the CLI exit code it maps to.
"""


class GoldmanError(Exception):
    exit_code = 4


class InvalidInput(GoldmanError, ValueError):
    exit_code = 2


class NumericalDegeneracy(GoldmanError):
    exit_code = 4


# hypgeom
class DegeneratePoint(NumericalDegeneracy):
    pass


class AmbiguousClass(NumericalDegeneracy):
    pass


class NotHyperbolic(InvalidInput):
    pass


class CoincidentPoints(InvalidInput):
    pass


class CoincidentGeodesics(NumericalDegeneracy):
    pass


class PointNotOnGeodesic(InvalidInput):
    pass


class NotATriangle(NumericalDegeneracy):
    pass


class AxesDisjoint(InvalidInput):
    pass


# group / surface
class BadLetter(InvalidInput):
    pass


class DegenerateParams(InvalidInput):
    pass


class NotDiscrete(InvalidInput):
    pass


class NoDistinguishedCurve(InvalidInput):
    pass


# goldman
class NonPrimitiveCollision(GoldmanError):
    """Axes of x and a conjugate of y coincide: the classes share a primitive root."""


class TriplePoint(NumericalDegeneracy):
    pass


class TangentDegenerate(NumericalDegeneracy):
    pass


class NoStabilization(GoldmanError):
    exit_code = 3


# twist
class TrackingLost(NumericalDegeneracy):
    pass

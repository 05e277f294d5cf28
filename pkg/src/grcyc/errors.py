"""Exception hierarchy shared by every grcyc module."""


class GrcycError(ValueError):
    """Base class for all domain errors raised by grcyc."""


class RankDeficient(GrcycError):
    pass


class ShapeMismatch(GrcycError):
    pass


class ZeroCoordinate(GrcycError):
    """A torus-quotient comparison was asked of a point with a vanishing coordinate.

    This is not a verdict of inequivalence; the test is only defined on
    nowhere-zero Plücker vectors.
    """


class SingularMap(GrcycError):
    pass


class ZeroParameter(GrcycError):
    pass


class NonPositiveParameter(GrcycError):
    pass


class ArgumentOutOfRange(GrcycError):
    pass


class NotRealizable(GrcycError):
    pass


class ZeroInput(GrcycError):
    pass


class InvalidRoots(GrcycError):
    pass


class CoincidentPoints(GrcycError):
    pass


class ZeroDenominator(GrcycError):
    pass


class OutsidePiCircle(GrcycError):
    pass


class ChartUndefined(GrcycError):
    def __init__(self, subset, message=None):
        self.subset = tuple(subset)
        label = ",".join(str(i) for i in self.subset)
        super().__init__(message or f"chart undefined: Plücker coordinate {{{label}}} vanishes")


class InvalidTableau(GrcycError):
    pass


class DegenerateToggle(GrcycError):
    pass


class ConfigError(GrcycError):
    pass

"""Exception hierarchy shared by all codo modules."""


class CodoError(Exception):
    """Base class for every error raised by this package."""


# --- tower / ring errors ---------------------------------------------------

class TowerError(CodoError):
    pass


class DuplicateName(TowerError):
    pass


class IllFoundedExtension(TowerError):
    pass


class TowerMismatch(TowerError):
    pass


class DivisionByZero(TowerError, ZeroDivisionError):
    pass


class ZeroDivisorInTower(TowerError):
    """Rationalisation hit alpha^2 - beta^2*f = 0: the radicand is a square."""


class ParseError(CodoError):
    pass


# --- operator errors -------------------------------------------------------

class OperatorError(CodoError):
    pass


class NonCommutingPair(OperatorError):
    pass


class OrderNotDivisible(OperatorError):
    pass


class NonMonic(OperatorError):
    pass


class TruncationError(OperatorError):
    """A pseudo-differential coefficient below the guaranteed depth was used."""


class InvalidAutomorphism(CodoError):
    pass


# --- curve / rank-two errors -----------------------------------------------

class CurveError(CodoError):
    pass


class XDependentResultant(CurveError):
    pass


class XDependentResidual(CurveError):
    pass


class DegreeMismatch(CurveError):
    pass


class CurveMismatch(CurveError):
    pass


class DegenerateRoot(CurveError):
    pass


class SeriesExtractionFailure(CurveError):
    pass


# --- solver errors ---------------------------------------------------------

class SolveError(CodoError):
    pass


class SingularLinearSystem(SolveError):
    pass


class NoSolutionAtBound(SolveError):
    pass


class NonUniqueSolution(SolveError):
    pass


class RankTooSmall(CodoError):
    pass


class UnknownFixture(CodoError):
    pass

"""Exception hierarchy.

Every error raised on purpose by the package derives from `SzetaError`, which
is itself a `ValueError` so that callers treating bad input generically keep
working.
"""


class SzetaError(ValueError):
    pass


# graph construction and walks
class ParseError(SzetaError):
    pass


class DisconnectedGraph(SzetaError):
    pass


class NonPositiveWeight(SzetaError):
    pass


class BadVertexId(SzetaError):
    pass


class NotAWalk(SzetaError):
    pass


class NotClosed(SzetaError):
    pass


class MismatchedEdgeSets(SzetaError):
    pass


# polytopes and norms
class DegenerateBall(SzetaError):
    """The cycle classes do not span: the stable 'norm' is only a seminorm."""


class DimensionMismatch(SzetaError):
    pass


class SingularMatrix(SzetaError):
    pass


class ZeroClass(SzetaError):
    pass


# Ehrhart data
class InconsistentFit(SzetaError):
    pass


class MeanZeroViolation(SzetaError):
    pass


class NotIntegerValued(SzetaError):
    """The norm takes non-integer values on the lattice."""


# analytic layer
class PoleError(SzetaError):
    pass


class PoleAtOne(PoleError):
    pass


class PoleAtNonPositiveInteger(PoleError):
    pass


class NearPole(PoleError):
    pass


class NonPositiveQ(SzetaError):
    pass


class ConvergenceDomain(SzetaError):
    pass


class DivergentExtrapolation(SzetaError):
    pass


class SpectrumPoint(SzetaError):
    pass


class TruncationTooSmall(SzetaError):
    pass


# lattices
class NotPositiveDefinite(SzetaError):
    pass


class NonIntegerGram(SzetaError):
    pass


class DimensionNotTwo(SzetaError):
    pass

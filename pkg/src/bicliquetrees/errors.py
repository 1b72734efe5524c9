"""Exception hierarchy.

Every error raised by the library derives from :class:`BicliqueTreesError`,
so the CLI can map the whole family to exit code 2 and print the class name.
"""


class BicliqueTreesError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(BicliqueTreesError, ValueError):
    """An argument is malformed in a way no more specific error describes."""


# graph construction / parsing
class SelfLoopError(BicliqueTreesError):
    pass


class NonPositiveWeightError(BicliqueTreesError):
    pass


class NonUnitWeightsError(BicliqueTreesError):
    pass


class VertexOutOfRangeError(BicliqueTreesError):
    pass


class GraphFormatError(BicliqueTreesError):
    """Malformed graph or partition file. Carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# linear algebra
class NotSquareError(BicliqueTreesError):
    pass


class IndexOutOfRangeError(BicliqueTreesError):
    pass


class SingularError(BicliqueTreesError):
    pass


class SingularBlockError(SingularError):
    pass


# combinatorics
class TooLargeError(BicliqueTreesError):
    pass


class NotEulerianError(BicliqueTreesError):
    pass


class NotStronglyConnectedError(BicliqueTreesError):
    pass


class ReducedNotStronglyConnectedError(NotStronglyConnectedError):
    pass


class DisconnectedError(BicliqueTreesError):
    pass


class ZeroDegreeError(BicliqueTreesError):
    pass


class ZeroOutDegreeError(ZeroDegreeError):
    pass


class InDegreeZeroError(BicliqueTreesError):
    pass


# biclique partitions and reductions
class HostMismatchError(BicliqueTreesError):
    """A partition was built for a different digraph."""


class NotABicliqueError(BicliqueTreesError):
    pass


class CoverageGapError(BicliqueTreesError):
    pass


class CoverageOverlapError(BicliqueTreesError):
    pass


class WeightsNotInducedError(BicliqueTreesError):
    pass


class RootNotCoveredError(BicliqueTreesError):
    pass


class NonIntegerResultError(BicliqueTreesError):
    pass


class HypothesisViolatedError(BicliqueTreesError):
    """A degree hypothesis of a closed-form formula does not hold."""


class DegreeHypothesisViolatedError(HypothesisViolatedError):
    pass


class IdentityViolatedError(BicliqueTreesError):
    """Two independent routes to the same quantity disagreed.

    Never expected on valid input; signals a bug or a false identity.
    """

"""Exception hierarchy shared by every module of the package."""


class GraphError(ValueError):
    """Base class for invalid-input errors raised by this package."""


class SelfLoop(GraphError):
    pass


class NonPositiveWeight(GraphError):
    pass


class OverlappingSets(GraphError):
    pass


class EmptyOrFullSet(GraphError):
    pass


class EmptyRetainedSet(GraphError):
    pass


class DimensionMismatch(GraphError):
    pass


class Disconnected(GraphError):
    pass


class NotInRange(GraphError):
    """Right-hand side is not orthogonal to the all-ones vector."""


class LastVertex(GraphError):
    pass


class ZeroThreshold(GraphError):
    pass


class TooLarge(GraphError):
    """Input exceeds the size cap of a brute-force routine."""


class SingularBlock(GraphError):
    pass


class BadParams(GraphError):
    pass


class NoConvergence(RuntimeError):
    pass


class NoQualifyingThreshold(RuntimeError):
    """No sweep threshold met all three SweepCut conditions.

    ``lam_hat`` holds the eigenvalue estimate that was used, so callers can
    decide whether the graph is outside the λ ≤ 1/25600 regime.
    """

    def __init__(self, message, lam_hat=None):
        super().__init__(message)
        self.lam_hat = lam_hat

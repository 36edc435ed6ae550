"""Exception hierarchy shared by all avq modules.

Every contract violation raises a subclass of ``DomainError`` so that
callers (and the CLI) can distinguish bad input from programming errors.
"""


class DomainError(Exception):
    """Base class for all avq contract violations."""


class NotHermitian(DomainError):
    pass


class NotUnitary(DomainError):
    pass


class DimMismatch(DomainError):
    pass


class NotProjector(DomainError):
    pass


class NotEffect(DomainError):
    pass


class NotMaximal(DomainError):
    pass


class NotPermutation(DomainError):
    pass


class SpaceMismatch(DomainError):
    pass


class NotPermissible(DomainError):
    pass


class ValueMismatch(DomainError):
    pass


class BadDistribution(DomainError):
    pass


class NotDiagonal(DomainError):
    pass


class ZeroEvidence(DomainError):
    pass


class ZeroProbabilityBranch(DomainError):
    """Raised when a measurement branch has (numerically) zero probability.

    The branch probability is still available as ``.probability``; only the
    post-measurement state is undefined.
    """

    def __init__(self, probability: float):
        super().__init__(f"branch probability {probability!r} below threshold")
        self.probability = probability

"""Exception hierarchy shared by every module."""


class OddKTreeError(Exception):
    """Base class for all package errors."""


class GraphInputError(OddKTreeError, ValueError):
    pass


class OutOfRangeError(GraphInputError):
    pass


class SelfLoopError(GraphInputError):
    pass


class NotKTreeError(OddKTreeError):
    def __init__(self, k, reason):
        super().__init__(f"not a {k}-tree: {reason}")
        self.k = k
        self.reason = reason


class TooSmallError(OddKTreeError, ValueError):
    pass


class NotProperError(OddKTreeError):
    def __init__(self, edge):
        super().__init__(f"coloring is not proper: edge {edge} is monochromatic")
        self.edge = edge


class RootNotCliqueError(OddKTreeError, ValueError):
    pass


class ApexNotCommonNeighborError(OddKTreeError, ValueError):
    pass


class KTooSmallError(OddKTreeError, ValueError):
    pass


class InternalInvariantError(OddKTreeError, AssertionError):
    """A condition the underlying proofs guarantee was violated (a bug)."""


class CaseDispatchExhausted(InternalInvariantError):
    pass


class RecipeFailure(InternalInvariantError):
    """A prescribed color choice set had no valid member."""

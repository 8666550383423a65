"""Exception types shared across the package."""


class ZeroNormError(ValueError):
    """State or distribution has zero norm and cannot be normalized."""


class DimensionMismatchError(ValueError):
    """Array shapes or lengths do not agree."""


class UnknownOrderError(ValueError):
    """Requested stencil order is not one of the supported orders."""


class InvalidSizeError(ValueError):
    """Operator size is too small or otherwise invalid for the construction."""


class SizeTooSmallError(InvalidSizeError):
    """Periodic construction would self-wrap: n must exceed twice the band width."""


class EmbeddingMismatchError(ValueError):
    """Operator size and embedding geometry disagree."""


class NodeOutOfRangeError(ValueError):
    """Node index lies outside the embedding's node range."""


class NonHermitianError(ValueError):
    """Transition rates are not symmetric, so the induced operator is not Hermitian."""


class NonConservativeError(ValueError):
    """Rate matrix rows do not sum to zero; the master equation would leak probability."""


class EigenSolverError(RuntimeError):
    """The symmetric eigendecomposition failed to converge."""

"""Exception types shared across the package."""


class CqmsError(Exception):
    """Base class for all errors raised by this package."""


class GroupTableError(CqmsError):
    """The supplied Cayley table is not a group law."""


class MetricError(CqmsError):
    """A metric matrix is malformed, triangle-violating or not bi-invariant."""


class LengthError(CqmsError):
    """A length function violates l(e) = 0 or positivity off the identity."""


class StructureError(CqmsError):
    """A structure tensor has the wrong shape; the message names the tensor."""


class NotAQuantumGroupError(CqmsError):
    """The invariance system has no one-dimensional solution space."""


class StateCertificationError(CqmsError):
    """A functional failed its positivity or normalization certificate."""


class CompletenessError(CqmsError):
    """An irreducible family does not satisfy sum(d^2) = dim."""


class SchurError(CqmsError):
    """Two supplied irreducibles admit a nonzero intertwiner."""


class InternalInconsistencyError(CqmsError):
    """A certificate that must hold for valid inputs failed; inputs corrupt."""


class DegenerateKernelError(CqmsError):
    """A seminorm kernel is larger than the scalars; the distance LP is unbounded."""


class UnsupportedSeminormError(CqmsError):
    """The requested exact computation is only available for polyhedral seminorms."""


class CertificationError(CqmsError):
    """A post-solve numerical certificate (LP residuals, brackets) failed."""


class ConfigError(CqmsError):
    """Invalid sweep or command configuration."""

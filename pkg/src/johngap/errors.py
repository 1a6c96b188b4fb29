"""Exception types shared across the library."""


class JohngapError(Exception):
    """Base class for all library-specific errors."""


class BadRange(JohngapError):
    """An integer argument is outside its admissible range."""


class DimensionMismatch(JohngapError):
    """Operands live in different ambient dimensions."""


class DimensionTooSmall(JohngapError):
    """The ambient dimension is too small for the requested construction."""


class ZeroDirection(JohngapError):
    """A direction vector is (numerically) zero."""


class UnboundedDirection(JohngapError):
    """The support LP is unbounded in the requested direction."""


class EmptyPolytope(JohngapError):
    """The polytope has no feasible point."""


class NonUnitOffsets(JohngapError):
    """Polar vertex extraction requires all offsets equal to 1."""


class NotInHull(JohngapError):
    """The target point is not in the convex hull of the generators."""


class NotOrthogonal(JohngapError):
    """An equatorial direction is not orthogonal to the pole."""


class NotUnit(JohngapError):
    """A vector that must be unit norm is not."""


class OutOfRegime(JohngapError):
    """Inputs violate the hypotheses under which a bound is proved."""


class FamilyNotFound(JohngapError):
    """The separated-subset search exhausted its attempt budget."""


class DegenerateK(JohngapError):
    """The derived sparsity parameter rounds to zero; the ratio is too large."""


class StrategyUnavailable(JohngapError):
    """The requested net strategy is not available in this dimension."""


class OracleRangeViolation(JohngapError):
    """A support oracle returned a value outside its declared range."""


class UnverifiedCertificate(JohngapError):
    """The certificate must pass hypothesis verification first."""


class LPError(JohngapError):
    """The LP solver failed to converge."""

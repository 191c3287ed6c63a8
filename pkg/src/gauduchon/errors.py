"""Exception types shared across the package."""


class GauduchonError(Exception):
    """Base class for all package errors."""


class DomainError(GauduchonError):
    """A point lies outside a field's or chart's declared domain,
    or an expression guard failed (log or division near zero)."""


class NonFinite(GauduchonError):
    """A jet component overflowed to inf or nan."""


class DimensionError(GauduchonError):
    """An operation received data of the wrong complex dimension."""


class NotPositiveDefinite(GauduchonError):
    """The metric value matrix failed the Hermitian positive-definite check."""


class ZeroVector(GauduchonError):
    """A direction vector required to be nonzero was (numerically) zero."""


class ZeroPoint(GauduchonError):
    """A chart point required to be nonzero was zero."""


class BaseNotKahler(GauduchonError):
    """An operation requiring a Kahler base chart received a chart with
    nonvanishing Chern torsion."""


class NonRealConformalFactor(GauduchonError):
    """A conformal factor took non-real values on the sampled domain."""


class InvalidSpec(GauduchonError):
    """A chart or Hopf specification violates its invariants."""


class ConfigError(GauduchonError):
    """A CLI/suite configuration failed to parse or validate."""

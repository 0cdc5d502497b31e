"""Exception types raised across the package."""

from __future__ import annotations


class SpinChainError(Exception):
    """Base class for all errors raised by spinchain_discord."""


class PositivityViolation(SpinChainError, ValueError):
    """Pair density elements do not describe a non-negative matrix."""


class TraceError(SpinChainError, ValueError):
    """Pair density trace deviates from one beyond tolerance."""


class NegativeEigenvalue(SpinChainError, ValueError):
    """A probability vector contains a clearly negative entry."""


class ModelUnsupported(SpinChainError, ValueError):
    """The requested solver does not handle this model definition."""


class SeparationOutOfRange(SpinChainError, ValueError):
    pass


class AnisotropyOutOfRange(SpinChainError, ValueError):
    pass


class FieldAboveCritical(SpinChainError, ValueError):
    pass


class SizeLimitExceeded(SpinChainError, ValueError):
    pass


class XFormViolation(SpinChainError, ValueError):
    """A reduced pair density has weight outside the X pattern."""


class DegenerateNormalization(SpinChainError, ValueError):
    pass


class ConfigError(SpinChainError, ValueError):
    """Invalid sweep configuration; message names the offending field."""

"""Exception hierarchy shared by the computational modules."""


class LogTevError(Exception):
    """Base class for every error raised by this package."""


class ContextError(LogTevError):
    """Two ring elements were built over different generator counts."""


class NotInvertibleError(LogTevError):
    """Series inversion requested for an element whose constant term is not +-1."""


class RankError(LogTevError):
    """A bundle was requested with no line-bundle summands."""


class TruncationError(LogTevError):
    """A Segre class was requested beyond the precomputed degree range."""


class ValidationError(LogTevError, ValueError):
    """Tangency data failed validation."""


class DegreeMismatch(ValidationError):
    pass


class Indivisible(ValidationError):
    pass


class NegativeTwist(ValidationError):
    pass


class NonPositivePart(ValidationError):
    pass


class ConfigurationError(LogTevError):
    """Tangency data lies outside the pattern a computation supports."""


class CrossCheckError(LogTevError):
    """The symbolic integral and the closed formula disagree.

    This never reflects a valid state; it means one of the two engines is wrong.
    """

"""Exception hierarchy.

Two families matter to callers: validation failures (bad input or a violated
mathematical hypothesis) and scale refusals (input too large for the chosen
exact algorithm). The CLI maps them to exit codes 2 and 3.
"""


class CharsumError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(CharsumError, ValueError):
    pass


class ScaleError(CharsumError):
    pass


class NoPrimeInInterval(ValidationError):
    pass


class InfeasibleSpacing(ValidationError):
    pass


class SpacingViolation(ValidationError):
    pass


class UnknownKind(ValidationError):
    pass


class HTooSmall(ValidationError):
    pass


class EmbeddingCollision(ValidationError):
    pass


class HypothesisViolated(ValidationError):
    pass


class ModulusTooLarge(ScaleError):
    pass


class OracleTooLarge(ScaleError):
    pass


class ScaleExceeded(ScaleError):
    pass

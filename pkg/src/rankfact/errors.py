"""Exception hierarchy shared by every module of the package."""


class RankFactError(Exception):
    """Base class for all library errors."""


class ShapeError(RankFactError, ValueError):
    pass


class GradeError(RankFactError, ValueError):
    pass


class PreconditionError(RankFactError, ValueError):
    """An operation was called outside its domain of validity."""


class ZeroMatrixError(PreconditionError):
    pass


class EpsilonTooLarge(PreconditionError):
    """The perturbation magnitude was not small enough for the degree pattern
    to come out right. Halving epsilon and retrying is the expected remedy."""


class ParseError(RankFactError, ValueError):
    pass


class SamplingError(RankFactError, RuntimeError):
    """Rejection sampling ran out of attempts."""


class InvariantViolation(RankFactError, RuntimeError):
    """An internal mathematical invariant failed. Always a bug."""


def check(condition: bool, message: str) -> None:
    # plain `assert` disappears under -O; these checks must not
    if not condition:
        raise InvariantViolation(message)

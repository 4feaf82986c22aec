"""Exception types shared across the package."""


class FreecatError(Exception):
    """Base class for all package-specific errors."""


class SizeGuardError(FreecatError):
    """An enumeration would exceed a configured size bound.

    Raised instead of silently truncating; callers that want graceful
    degradation catch this and report the check as skipped.
    """

    def __init__(self, what, size, bound):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: size {size} exceeds guard {bound}")


class CyclicGraphError(FreecatError):
    """The free-category builder was given a graph with a directed cycle."""


class NotAPosetError(FreecatError):
    """The poset builder was given a relation that is not a partial order."""


class BaseLimitMissingError(FreecatError):
    """The base category cannot form a limit (or colimit) that was required."""


class PreconditionViolatedError(FreecatError):
    """An operation was called outside its stated precondition."""


class ParseError(FreecatError):
    """A category file or object expression failed to parse."""


class UnknownObjectError(FreecatError):
    """An object expression referred to a name not present in the category."""

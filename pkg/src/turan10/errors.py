"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside an operation's mathematical domain."""


class ResourceError(RuntimeError):
    """A computation would exceed a configured size, count, or memory cap."""


class SearchError(RuntimeError):
    """A randomized search exhausted its retry budget.

    Carries the best attempt found so far in ``best`` (shape depends on the
    caller; for tuple sampling it is a dict with the best values and score).
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best

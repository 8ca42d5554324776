"""Exception types shared across the package."""


class PmzsError(Exception):
    """Base class for errors raised by this package."""


class DomainError(PmzsError):
    """Invalid input: malformed literals, mismatched groups, values outside the monoid."""


class ResourceLimitError(PmzsError):
    """A configured resource cap was exceeded.

    Partial results are never returned silently; when a cheap lower bound is
    known (for example the Davenport constant formula) it is attached as
    ``lower_bound``.
    """

    def __init__(self, message: str, *, lower_bound: int | None = None):
        super().__init__(message)
        self.lower_bound = lower_bound

"""Exception types shared by every qu5it subpackage."""


class Qu5itError(Exception):
    """Base class for all qu5it errors."""


class DomainError(Qu5itError, ValueError):
    """An argument is outside the domain an operation accepts."""


class ResourceLimitError(Qu5itError, RuntimeError):
    """A requested object would exceed a configured size limit."""

    def __init__(self, what: str, requested: int, limit: int):
        self.what = what
        self.requested = requested
        self.limit = limit
        super().__init__(f"{what}: requested {requested}, configured limit is {limit}")

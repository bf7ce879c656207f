"""Exception types shared across the package."""


class PermsortError(Exception):
    """Base class for all errors raised by permsort."""


class SizeMismatch(PermsortError, ValueError):
    pass


class DomainError(PermsortError, ValueError):
    pass


class LimitExceeded(PermsortError):
    """A computation was asked to go beyond a configured size cap."""


class EmptyGeneratorSet(PermsortError):
    pass


class EmptyLevel(PermsortError):
    pass


class SpecSyntaxError(PermsortError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)

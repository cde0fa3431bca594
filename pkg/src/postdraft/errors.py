"""Exception hierarchy shared across the package."""


class PostDraftError(Exception):
    """Base class for all package errors."""


class ValidationError(PostDraftError):
    """Input failed a structural or invariant check.

    ``field`` names the offending field where one can be identified.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class UnknownIdError(PostDraftError):
    """A bullet, paragraph, section, or workspace id does not exist."""


class NotFoundError(PostDraftError):
    """A stored workspace or record could not be located."""


class VersionConflictError(PostDraftError):
    """Optimistic-concurrency check failed: the caller's state is stale."""

    def __init__(self, message: str, expected: int, actual: int):
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class ConfigError(PostDraftError):
    """The gateway or service is misconfigured (bad credential, bad file)."""


class ProtocolError(PostDraftError):
    """The completion endpoint returned a response we cannot interpret."""


class ProviderError(PostDraftError):
    """Terminal completion failure after retries were exhausted."""

    def __init__(self, message: str, purpose_tag: str = "", retryable: bool = False):
        super().__init__(message)
        self.purpose_tag = purpose_tag
        self.retryable = retryable


class TransientProviderError(PostDraftError):
    """Retryable completion failure (timeout, 5xx, connection drop)."""

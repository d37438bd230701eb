"""Exception types raised by suci_pad.

Every expected failure derives from :class:`SuciPadError` so callers (and the
command-line front end) can tell them apart from programming errors.
"""


class SuciPadError(ValueError):
    """Base class for all expected failures."""


class FrequencyTableError(SuciPadError):
    """Malformed or unusable frequency data."""


class SchemeError(SuciPadError):
    """Bad scheme code or parameters."""


class LengthPreconditionError(SchemeError):
    """An input length the scheme cannot pad (it would have to shrink)."""

    def __init__(self, scheme: str, length: int, bound: int):
        self.scheme = scheme
        self.length = length
        self.bound = bound
        super().__init__(
            f"length {length} exceeds the maximum {bound} supported by {scheme}"
        )


class PaddingError(SuciPadError):
    """Byte-level pad/unpad failure."""


class SweepError(SuciPadError):
    """Invalid sweep configuration or empty selection."""


class SuciError(SuciPadError):
    """Invalid identifier or SUCI message."""


class MacMismatchError(SuciError):
    """The MAC tag did not verify (tampering or wrong home-network key)."""

"""Exception hierarchy.

Every library failure derives from :class:`TonalangError`; the CLI maps
these onto its data/format exit code.
"""


class TonalangError(Exception):
    pass


class DomainError(TonalangError, ValueError):
    """An argument lies outside the operation's domain."""


class AliasingError(DomainError):
    """A tone at or above the Nyquist frequency was requested."""


class EncodingError(DomainError):
    """Text contains a character with no assigned tone."""


class ConfigurationError(DomainError):
    """Framing or channel parameters are inconsistent."""


class FormatError(TonalangError):
    """A WAV stream violates the supported layout."""


class ParseError(TonalangError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 token: str | None = None):
        self.line = line
        self.column = column
        self.token = token
        if line is not None:
            message = f"{message} at line {line}, column {column}: {token!r}"
        super().__init__(message)


class PitchRangeError(ParseError):
    """A well-formed ABC note falls outside the 95-tone alphabet."""


class AlignmentError(TonalangError):
    """Sent and received symbol sequences differ in length."""

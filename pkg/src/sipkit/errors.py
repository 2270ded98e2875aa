"""Exception hierarchy shared by the library and the CLI.

The CLI maps these onto exit codes: bad parameters (``ValueError``) exit 1,
codec/io failures exit 2, domain errors exit 3.
"""


class SipkitError(Exception):
    """Base class for all library-specific errors."""


class CodecError(SipkitError):
    """A file could not be read or written."""


class UnsupportedFormatError(CodecError):
    """The file is in a format (or format variant) this library does not handle."""


class CorruptFileError(CodecError):
    """The file matches a supported format but its contents are malformed.

    ``offset`` is the byte position at which the problem was detected.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class DomainError(SipkitError):
    """The operation is undefined for this particular input."""

"""Exception hierarchy shared across the package."""

from __future__ import annotations


class StreamsumError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(StreamsumError):
    """A stream record could not be turned into an Instance.

    Carries the 1-based line number of the offending record when known.
    """

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class MalformedRecord(ParseError):
    """Record is not a JSON object."""


class MissingField(ParseError):
    """A required key is absent from the record."""

    def __init__(self, field: str, line_no: int | None = None):
        self.field = field
        super().__init__(f"missing required field {field!r}", line_no)


class InvalidField(ParseError):
    """A field is present but fails validation (wrong type, empty, ...)."""


class InvalidCount(InvalidField):
    """followers/followings must be non-negative integers."""


class InvalidTimestamp(InvalidField):
    """Timestamp string could not be parsed as ISO-8601."""


class DuplicateId(StreamsumError):
    """Two records share an instance id within one run."""


class EmptyStream(StreamsumError):
    """All instances were discarded (e.g. they precede the start point)."""


class DegenerateBootstrap(StreamsumError):
    """The weak-supervision rule labeled the first chunk single-class."""


class SingleClassTraining(StreamsumError):
    """Classifier training needs at least one example per class."""


class SchemeMismatch(StreamsumError):
    """Vector operations require both operands to share a weighting scheme."""

"""Exception and warning types raised across the pipeline."""


class ApisumError(Exception):
    """Base class for all package errors."""


class MalformedRecord(ApisumError):
    """A dump row is missing mandatory fields or holds unparseable values."""

    def __init__(self, index, reason):
        self.index = index
        self.reason = reason
        super().__init__(f"record {index}: {reason}")


class HttpError(ApisumError):
    """Remote request failed after the retry budget was spent."""

    def __init__(self, status, url=""):
        self.status = status
        self.url = url
        super().__init__(f"HTTP {status} for {url}" if url else f"HTTP {status}")


class QuotaExhausted(ApisumError):
    """The remote API reported zero remaining quota before we were done."""


class SchemaVersionMismatch(ApisumError):
    """A post store was written by an incompatible version."""


class UnbalancedParens(ApisumError):
    """A code entity has unequal numbers of '(' and ')'."""


class FormatError(ApisumError):
    """An embedding file line has the wrong arity or a non-numeric value."""

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class EmptyModel(ApisumError):
    """An embedding file declares a zero-size vocabulary."""


class DimensionMismatch(ApisumError):
    """Vectors of different dimensions were combined."""


class ApiUnknown(ApisumError):
    """The requested API name never occurs in the dataset."""


class EmptyCorpus(ApisumError):
    """No sentences survived corpus construction and preprocessing."""


class ConfigError(ApisumError):
    """A configuration file or value is invalid."""


class CorpusTooSmall(UserWarning):
    """Fewer corpus sentences than the requested summary length."""

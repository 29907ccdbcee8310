"""Exception hierarchy shared by every talg module."""


class TalgError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(TalgError, ValueError):
    """Scalars or arrays from cyclotomic fields of different order were mixed."""


class ScalarParseError(TalgError, ValueError):
    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class DimensionError(TalgError, ValueError):
    pass


class PreconditionError(TalgError):
    """An operation's input does not satisfy a required algebraic property.

    ``result`` optionally carries the failing :class:`~talg.checks.CheckResult`.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class WellDefinednessError(TalgError):
    """A map defined on representatives does not descend to the quotient."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class TruncationError(TalgError):
    """A free-algebra product would exceed the degree cap."""

    def __init__(self, message, words=None):
        super().__init__(message)
        self.words = words


class FileFormatError(TalgError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column

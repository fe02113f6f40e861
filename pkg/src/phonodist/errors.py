"""Exception hierarchy shared by every module.

`DataError` subclasses are input/data problems (CLI exit code 2);
`ResourceLimitError` signals an exhausted product-state budget (exit code 3).
"""


class PhonoError(Exception):
    """Base class for all toolkit errors."""


class DataError(PhonoError, ValueError):
    """Malformed or inconsistent input data."""


class ParseError(DataError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateSymbolError(ParseError):
    pass


class InvariantError(DataError):
    pass


class UnknownSymbolError(DataError):
    def __init__(self, token, position):
        self.token = token
        self.position = position
        super().__init__(f"unknown symbol {token!r} at position {position}")


class MixedInventoryError(DataError):
    pass


class LengthMismatchError(DataError):
    pass


class EncodingError(DataError):
    pass


class UnknownNameError(DataError):
    pass


class AlphabetMismatchError(DataError):
    pass


class DanglingPinningError(DataError):
    pass


class TierMismatchError(DataError):
    pass


class ResourceLimitError(PhonoError):
    pass

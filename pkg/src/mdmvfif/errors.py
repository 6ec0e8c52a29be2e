"""Exception hierarchy.

``DataError`` subclasses describe bad inputs or files (CLI exit code 2);
everything else derived from ``MdMvFIFError`` is a programming/usage error.
"""


class MdMvFIFError(Exception):
    """Base class for all package errors."""


class DataError(MdMvFIFError, ValueError):
    """Input data cannot be processed."""


class InvalidFilterLength(MdMvFIFError, ValueError):
    pass


class KernelTooLarge(DataError):
    pass


class SpectrumOutOfRange(MdMvFIFError, ValueError):
    pass


class SeriesTooShort(DataError):
    pass


class NoOscillation(DataError):
    """Raised when a series has fewer than two extrema, i.e. it is a trend."""


class GridTooSmall(DataError):
    pass


class PadTooLarge(DataError):
    pass


class DegenerateSlice(DataError):
    def __init__(self, t):
        super().__init__(f"time slice {t} has zero norm")
        self.t = t


class BadFrequency(DataError):
    pass


class FormatError(DataError):
    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class ShapeMismatch(DataError):
    def __init__(self, t, expected, got):
        super().__init__(f"time step {t}: grid shape {got} differs from {expected}")
        self.t = t


class ParseError(DataError):
    def __init__(self, path, row, col, detail=""):
        msg = f"{path}: bad cell at row {row}, column {col}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.path, self.row, self.col = str(path), row, col


class IndexOutOfRange(DataError, IndexError):
    pass


class StageError(DataError):
    """Wraps a failure inside an outer decomposition round."""

    def __init__(self, round_index, stage, cause):
        super().__init__(f"round {round_index} ({stage} stage): {cause}")
        self.round_index = round_index
        self.stage = stage
        self.cause = cause

"""
errors.py

Exception hierarchy shared by every package module. Library code raises these;
the command layer translates them into exit codes.
"""


class LabError(Exception):
    """Base class of every error raised by the laboratory."""


class InvalidInputError(LabError, ValueError):
    """Shapes, labels, pixel ranges or parameters outside their domain."""


class ConfigError(LabError):
    """Strict configuration parsing failures and unknown names."""


class TrainingError(LabError):

    def __init__(self, epoch: int, message: str = "non-finite training loss"):
        self.epoch = epoch
        super().__init__(f"Training diverged at epoch {epoch}: {message}")


# Weight files ----------------------------------------------------------------
class WeightsFormatError(LabError):
    """A weights file could not be decoded."""


class WeightsMagicError(WeightsFormatError):
    pass


class WeightsVersionError(WeightsFormatError):
    pass


class WeightsTruncatedError(WeightsFormatError):
    pass


class WeightsLengthMismatchError(WeightsFormatError):
    pass


# IDX files -------------------------------------------------------------------
class IdxFormatError(LabError):
    """An IDX byte string could not be decoded."""


class IdxMagicError(IdxFormatError):

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Wrong IDX magic at offset 0: expected 0x{expected:08x}, got 0x{actual:08x}")


class IdxTruncatedError(IdxFormatError):

    def __init__(self, offset: int, needed: int):
        self.offset = offset
        self.needed = needed
        super().__init__(f"IDX data truncated at byte offset {offset} ({needed} bytes required)")


# Attacks and harness ---------------------------------------------------------
class BudgetExhausted(LabError):
    """Raised by an oracle once its query budget is spent. Attacks treat it as termination."""


class UndefinedAFRError(LabError):
    """AFR requested over zero initially-correct samples."""


class ReportFormatError(LabError):
    """A report directory is missing report.json or it does not parse."""

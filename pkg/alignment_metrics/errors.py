"""
Exception types raised by alignment_metrics.
"""

from typing import Optional


class AlignmentMetricsError(ValueError):
    """Base class for errors raised on malformed input data."""


class EmbeddingFormatError(AlignmentMetricsError):
    """An embedding file could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None,
                 record_index: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        elif record_index is not None:
            message = f"record {record_index}: {message}"
        super().__init__(message)
        self.line_number = line_number
        self.record_index = record_index


class DatasetFormatError(AlignmentMetricsError):
    """An evaluation dataset could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class UndefinedCorrelationError(AlignmentMetricsError):
    """A correlation coefficient is undefined for the given scores."""

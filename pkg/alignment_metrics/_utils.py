"""
Internal utility functions for alignment_metrics.
"""

import numpy as np


def check_threshold(value: float) -> float:
    """Validate a similarity threshold and return it as a float."""
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {value}")
    return value


def as_weight_matrix(weights) -> np.ndarray:
    """Convert array-like weights to a 2-D float64 array with finite entries."""
    matrix = np.asarray(weights, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValueError(f"weights must be a 2-D matrix, got {matrix.ndim} dimension(s)")
    rows, cols = matrix.shape
    if rows < 1 or cols < 1:
        raise ValueError(f"weights must have at least one row and one column, got {rows}x{cols}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("weights must be finite")
    return matrix

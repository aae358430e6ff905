"""
Maximum-weight one-to-one assignment (Kuhn-Munkres / Hungarian method).

The rectangular weight matrix is padded to a square with zero-weight dummy
entries and turned into a cost matrix ``max_entry - w``; the square
cost-minimization problem is solved with
:func:`scipy.optimize.linear_sum_assignment`. Pairs that touch a dummy row
or column are dropped, leaving a matching of size ``min(rows, cols)``.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._utils import as_weight_matrix

Pair = Tuple[int, int]

# relative tolerance under which two assignment totals count as tied
TIE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class AssignmentResult:
    """Optimal matching: sorted (row, column) pairs and their total weight."""

    pairs: Tuple[Pair, ...]
    total_weight: float

    def as_dict(self) -> Dict[int, int]:
        """Row -> column map of the matching."""
        return dict(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def _solve(weights: np.ndarray) -> List[Pair]:
    """One optimal matching of size min(rows, cols), as sorted pairs."""
    rows, cols = weights.shape
    if rows == 0 or cols == 0:
        return []
    n = max(rows, cols)
    padded = np.zeros((n, n), dtype=np.float64)
    padded[:rows, :cols] = weights
    cost = padded.max() - padded
    row_ind, col_ind = linear_sum_assignment(cost)
    return sorted((int(r), int(c)) for r, c in zip(row_ind, col_ind) if r < rows and c < cols)


def _total(weights: np.ndarray, pairs: Sequence[Pair]) -> float:
    return float(sum(weights[r, c] for r, c in pairs))


def _lexicographic(weights: np.ndarray, incumbent: List[Pair], best: float) -> List[Pair]:
    """
    Smallest sorted pair list among the optimal matchings.

    Pairs are fixed greedily in lexicographic order; a candidate is accepted
    when the best completion of the remaining rows/columns still reaches the
    optimum. The incumbent matching certifies its own pairs without a solve.
    """
    rows, cols = weights.shape
    size = min(rows, cols)
    tolerance = TIE_TOLERANCE * max(1.0, abs(best))
    chosen: List[Pair] = []
    gained = 0.0
    free_cols = list(range(cols))
    start = 0

    while len(chosen) < size:
        need = size - len(chosen) - 1
        accepted = None
        for r in range(start, rows):
            rest_rows = list(range(r + 1, rows))
            if need > len(rest_rows):
                break
            for c in free_cols:
                rest_cols = [k for k in free_cols if k != c]
                if (r, c) in incumbent:
                    accepted = (r, c)
                    break
                sub = weights[np.ix_(rest_rows, rest_cols)]
                completion = _solve(sub) if need else []
                value = gained + weights[r, c] + _total(sub, completion)
                if value >= best - tolerance:
                    accepted = (r, c)
                    incumbent = chosen + [(r, c)] + [
                        (rest_rows[i], rest_cols[j]) for i, j in completion]
                    break
            if accepted is not None:
                break
        if accepted is None:
            raise RuntimeError("failed to reconstruct an optimal assignment")
        chosen.append(accepted)
        gained += weights[accepted]
        free_cols.remove(accepted[1])
        start = accepted[0] + 1

    return chosen


def solve_max_assignment(weights, canonical: bool = True) -> AssignmentResult:
    """
    Maximum-weight matching of size min(rows, cols) on a weight matrix.

    Parameters:
    -----------
    weights : array-like
        rows x cols matrix of finite reals, rows >= 1 and cols >= 1
    canonical : bool, default=True
        Return the lexicographically smallest sorted pair list among all
        optimal matchings. With False the solver's first optimum is returned,
        which is deterministic for a given input but not tie-normalized;
        total_weight is the same either way.

    Returns:
    --------
    AssignmentResult
    """
    matrix = as_weight_matrix(weights)
    pairs = _solve(matrix)
    if canonical:
        pairs = _lexicographic(matrix, pairs, _total(matrix, pairs))
    return AssignmentResult(tuple(pairs), _total(matrix, pairs))

"""
Segment-level correlation between metric scores and human judgments.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, NamedTuple, Sequence, Tuple

import numpy as np
from scipy import stats

from .errors import UndefinedCorrelationError

ScorePair = Tuple[float, float]


class Coefficient(str, Enum):
    KENDALL = "kendall"
    PEARSON = "pearson"
    SPEARMAN = "spearman"


@dataclass(frozen=True)
class JudgedSegment:
    """A segment's human adequacy score next to its metric score."""

    segment_id: str
    human_score: float
    metric_score: float

    def __post_init__(self):
        if not (math.isfinite(self.human_score) and math.isfinite(self.metric_score)):
            raise ValueError(f"segment {self.segment_id!r}: scores must be finite")

    @property
    def pair(self) -> ScorePair:
        return self.human_score, self.metric_score


class SweepRow(NamedTuple):
    """Correlation of one metric at one threshold."""

    threshold: float
    metric: str
    tau: float


def _split(pairs: Iterable[ScorePair]) -> Tuple[np.ndarray, np.ndarray]:
    data = np.asarray(list(pairs), dtype=np.float64)
    if data.size == 0:
        data = data.reshape(0, 2)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError("expected a sequence of (human_score, metric_score) pairs")
    human, metric = data[:, 0], data[:, 1]
    if len(human) < 2:
        raise UndefinedCorrelationError(f"need at least 2 scored segments, got {len(human)}")
    if not (np.all(np.isfinite(human)) and np.all(np.isfinite(metric))):
        raise ValueError("scores must be finite")
    if np.ptp(human) == 0:
        raise UndefinedCorrelationError("all human scores are identical; correlation is undefined")
    if np.ptp(metric) == 0:
        raise UndefinedCorrelationError("all metric scores are identical; correlation is undefined")
    return human, metric


def kendall_tau_b(pairs: Sequence[ScorePair]) -> float:
    """
    Kendall's tau-b between human and metric scores.

    tau_b = (C - D) / sqrt((C + D + T_h) (C + D + T_m)) where T_h and T_m count
    pairs tied only in the human or only in the metric scores.

    Raises:
    -------
    UndefinedCorrelationError
        Fewer than 2 pairs, or either side has no variance
    """
    human, metric = _split(pairs)
    tau = stats.kendalltau(human, metric, variant="b")[0]
    return float(min(1.0, max(-1.0, tau)))


def pearson(pairs: Sequence[ScorePair]) -> float:
    human, metric = _split(pairs)
    return float(stats.pearsonr(human, metric)[0])


def spearman(pairs: Sequence[ScorePair]) -> float:
    human, metric = _split(pairs)
    return float(stats.spearmanr(human, metric)[0])


_COEFFICIENTS = {
    Coefficient.KENDALL: kendall_tau_b,
    Coefficient.PEARSON: pearson,
    Coefficient.SPEARMAN: spearman,
}


def correlate(segments: Sequence[JudgedSegment],
              coefficient: Coefficient = Coefficient.KENDALL) -> float:
    """Correlation of a list of judged segments."""
    return _COEFFICIENTS[Coefficient(coefficient)]([s.pair for s in segments])


def best_thresholds(rows: Iterable[SweepRow]) -> Dict[str, SweepRow]:
    """Per metric, the row with the highest tau (smallest threshold on ties)."""
    best: Dict[str, SweepRow] = {}
    for row in sorted(rows, key=lambda r: r.threshold):
        current = best.get(row.metric)
        if current is None or row.tau > current.tau:
            best[row.metric] = row
    return best


def average(values: Sequence[float]) -> float:
    """Mean of per-dataset correlations."""
    items = list(values)
    if not items:
        raise ValueError("no values to average")
    return float(np.mean(items))

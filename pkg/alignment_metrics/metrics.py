"""
Word-alignment-based sentence similarity over word embeddings.

Three scores compare a hypothesis segment x with a reference segment y:

- AAS (average alignment): mean thresholded similarity over all |x||y| word pairs
- MAS (maximum alignment): per-word best match averaged, symmetrized over both directions
- HAS (Hungarian alignment): optimal 1:1 word matching divided by min(|x|, |y|)

Word similarity is the cosine of the two embedding vectors. Similarities
strictly below the threshold contribute 0; denominators never change.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from ._utils import check_threshold
from .assignment import solve_max_assignment
from .embeddings import EmbeddingTable
from .tokenization import Segment, TokenizerPolicy

logger = logging.getLogger(__name__)

SegmentPair = Tuple[Segment, Segment]


class Metric(str, Enum):
    """Sentence similarity heuristic."""

    AAS = "aas"
    MAS = "mas"
    HAS = "has"

    @classmethod
    def parse(cls, value: Union[str, "Metric"]) -> "Metric":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())

    @property
    def label(self) -> str:
        return self.value.upper()


class OOVPolicy(str, Enum):
    """Similarity assigned when a token has no embedding."""

    SURFACE = "surface"
    ZERO = "zero"


@dataclass(frozen=True)
class MetricConfig:
    """Metric choice and the knobs that affect word similarity."""

    metric: Metric = Metric.MAS
    threshold: float = 0.0
    oov_policy: OOVPolicy = OOVPolicy.SURFACE
    lowercase_fallback: bool = False
    tokenizer: TokenizerPolicy = TokenizerPolicy.PUNCT

    def __post_init__(self):
        object.__setattr__(self, "metric", Metric.parse(self.metric))
        object.__setattr__(self, "threshold", check_threshold(self.threshold))
        object.__setattr__(self, "oov_policy", OOVPolicy(self.oov_policy))
        object.__setattr__(self, "tokenizer", TokenizerPolicy(self.tokenizer))

    def with_threshold(self, threshold: float) -> "MetricConfig":
        return replace(self, threshold=threshold)

    def with_metric(self, metric: Union[str, Metric]) -> "MetricConfig":
        return replace(self, metric=Metric.parse(metric))


@dataclass(frozen=True)
class PairSimilarityMatrix:
    """Word similarities between a row segment and a column segment."""

    values: np.ndarray
    threshold: float = 0.0

    @property
    def rows(self) -> int:
        return int(self.values.shape[0])

    @property
    def cols(self) -> int:
        return int(self.values.shape[1])

    @property
    def thresholded_values(self) -> np.ndarray:
        return np.where(self.values < self.threshold, 0.0, self.values)

    def with_threshold(self, threshold: float) -> "PairSimilarityMatrix":
        return PairSimilarityMatrix(self.values, check_threshold(threshold))


class WordLink(NamedTuple):
    """One aligned (hypothesis word, reference word) pair."""

    hyp_index: int
    ref_index: int
    similarity: float


def word_similarity(a: str, b: str, table: EmbeddingTable, config: MetricConfig) -> float:
    """
    Cosine of the two word vectors, or the OOV policy's value if either is missing.

    Equal to the corresponding entry of build_matrix, bit for bit.
    """
    return float(build_matrix(Segment((a,)), Segment((b,)), table, config).values[0, 0])


def _rows(segment: Segment, table: EmbeddingTable, fallback: bool) -> np.ndarray:
    """Table row of every token, -1 for OOV."""
    rows = [table.index_of(token, fallback) for token in segment]
    return np.array([-1 if r is None else r for r in rows], dtype=np.intp)


def count_oov(segment: Segment, table: EmbeddingTable, fallback_lowercase: bool = False) -> int:
    """Number of token positions whose lookup returns nothing."""
    return sum(1 for token in segment if table.index_of(token, fallback_lowercase) is None)


def build_matrix(x: Segment, y: Segment, table: EmbeddingTable,
                 config: MetricConfig) -> PairSimilarityMatrix:
    """Similarity matrix with x along the rows and y along the columns."""
    values = np.zeros((len(x), len(y)), dtype=np.float64)
    x_rows = _rows(x, table, config.lowercase_fallback)
    y_rows = _rows(y, table, config.lowercase_fallback)
    x_known = x_rows >= 0
    y_known = y_rows >= 0

    if x_known.any() and y_known.any():
        xr, yr = x_rows[x_known], y_rows[y_known]
        unit = table.unit_vectors
        # one reduction per entry, so an entry does not depend on the matrix shape
        products = unit[xr][:, None, :] * unit[yr][None, :, :]
        sims = np.clip(products.sum(axis=2), -1.0, 1.0)
        # a nonzero vector against itself is exactly 1
        same = (xr[:, None] == yr[None, :]) & (table.norms[xr] > 0)[:, None]
        sims[same] = 1.0
        values[np.ix_(x_known, y_known)] = sims

    if config.oov_policy is OOVPolicy.SURFACE:
        for i in np.flatnonzero(~x_known):
            for j, token in enumerate(y.tokens):
                if token == x.tokens[i]:
                    values[i, j] = 1.0

    return PairSimilarityMatrix(values, config.threshold)


def _row_max_mean(thresholded: np.ndarray) -> float:
    rows, cols = thresholded.shape
    if rows == 0 or cols == 0:
        return 0.0
    return float(thresholded.max(axis=1).mean())


def score_matrix(matrix: PairSimilarityMatrix, metric: Union[str, Metric],
                 threshold: Optional[float] = None) -> float:
    """
    Score a prebuilt matrix; ``threshold`` overrides the matrix's own.

    Sweeps reuse one matrix per segment pair and call this once per threshold.
    """
    if threshold is not None:
        matrix = matrix.with_threshold(threshold)
    metric = Metric.parse(metric)
    rows, cols = matrix.rows, matrix.cols
    if rows == 0 or cols == 0:
        return 0.0
    weights = matrix.thresholded_values

    if metric is Metric.AAS:
        return float(weights.sum()) / (rows * cols)
    if metric is Metric.MAS:
        return (_row_max_mean(weights) + _row_max_mean(weights.T)) / 2
    result = solve_max_assignment(weights, canonical=False)
    return result.total_weight / min(rows, cols)


def _oriented(x: Segment, y: Segment) -> SegmentPair:
    """Order a pair so that symmetric scores are computed identically both ways."""
    if x.tokens <= y.tokens:
        return x, y
    return y, x


def _pair_matrix(x: Segment, y: Segment, table: EmbeddingTable,
                 config: MetricConfig) -> PairSimilarityMatrix:
    return build_matrix(*_oriented(x, y), table, config)


def score_aas(x: Segment, y: Segment, table: EmbeddingTable, config: MetricConfig) -> float:
    """Average alignment similarity; 0 if either segment is empty."""
    return score_matrix(_pair_matrix(x, y, table, config), Metric.AAS)


def score_mas_asym(a: Segment, b: Segment, table: EmbeddingTable, config: MetricConfig) -> float:
    """Mean over words of ``a`` of their best thresholded similarity in ``b``."""
    return _row_max_mean(build_matrix(a, b, table, config).thresholded_values)


def score_mas(x: Segment, y: Segment, table: EmbeddingTable, config: MetricConfig) -> float:
    """Maximum alignment similarity, averaged over both directions."""
    return score_matrix(_pair_matrix(x, y, table, config), Metric.MAS)


def score_has(x: Segment, y: Segment, table: EmbeddingTable, config: MetricConfig) -> float:
    """Hungarian alignment similarity: best 1:1 matching weight over min(|x|, |y|)."""
    return score_matrix(_pair_matrix(x, y, table, config), Metric.HAS)


def score(x: Segment, y: Segment, table: EmbeddingTable, config: MetricConfig) -> float:
    """Score a pair with ``config.metric``."""
    return score_matrix(_pair_matrix(x, y, table, config), config.metric)


def _map(func, items: Sequence, workers: int) -> list:
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def build_matrices(pairs: Sequence[SegmentPair], table: EmbeddingTable, config: MetricConfig,
                   workers: int = 1) -> List[PairSimilarityMatrix]:
    """Similarity matrices for a batch of (hypothesis, reference) pairs, in input order."""
    matrices = _map(lambda pair: _pair_matrix(pair[0], pair[1], table, config), pairs, workers)
    logger.debug("built %d similarity matrices with %d worker(s)", len(matrices), workers)
    return matrices


def score_batch(pairs: Sequence[SegmentPair], table: EmbeddingTable, config: MetricConfig,
                workers: int = 1) -> np.ndarray:
    """``config.metric`` scores for a batch of pairs, in input order."""
    def run(pair: SegmentPair) -> float:
        return score(pair[0], pair[1], table, config)

    return np.array(_map(run, pairs, workers), dtype=np.float64)


def word_alignment(x: Segment, y: Segment, table: EmbeddingTable,
                   config: MetricConfig) -> List[WordLink]:
    """The 1:1 alignment chosen by HAS, with thresholded similarities."""
    matrix = build_matrix(x, y, table, config)
    if matrix.rows == 0 or matrix.cols == 0:
        return []
    weights = matrix.thresholded_values
    result = solve_max_assignment(weights)
    return [WordLink(i, j, float(weights[i, j])) for i, j in result.pairs]


def best_matches(x: Segment, y: Segment, table: EmbeddingTable,
                 config: MetricConfig) -> List[WordLink]:
    """The 1:n alignment used by MAS from x to y (first index wins ties)."""
    matrix = build_matrix(x, y, table, config)
    if matrix.rows == 0 or matrix.cols == 0:
        return []
    weights = matrix.thresholded_values
    best = weights.argmax(axis=1)
    return [WordLink(i, int(j), float(weights[i, j])) for i, j in enumerate(best)]

"""
alignment_metrics - word-alignment-based sentence similarity for MT evaluation.

This package scores a translation hypothesis against a reference with three
alignment heuristics over pre-trained word embeddings (AAS, MAS, HAS) and
correlates the scores with human judgments at the segment level.
"""

__version__ = "0.1.0"

from .errors import (
    AlignmentMetricsError,
    DatasetFormatError,
    EmbeddingFormatError,
    UndefinedCorrelationError,
)
from .embeddings import (
    EmbeddingFormat,
    EmbeddingTable,
    WordVector,
    cosine,
    load_binary_format,
    load_embeddings,
    load_text_format,
    lookup,
    save_binary_format,
    save_text_format,
)
from .tokenization import Segment, TokenizerPolicy, tokenize
from .assignment import AssignmentResult, solve_max_assignment
from .metrics import (
    Metric,
    MetricConfig,
    OOVPolicy,
    PairSimilarityMatrix,
    WordLink,
    best_matches,
    build_matrices,
    build_matrix,
    count_oov,
    score,
    score_aas,
    score_batch,
    score_has,
    score_mas,
    score_mas_asym,
    score_matrix,
    word_alignment,
    word_similarity,
)
from .correlation import (
    Coefficient,
    JudgedSegment,
    SweepRow,
    average,
    best_thresholds,
    correlate,
    kendall_tau_b,
    pearson,
    spearman,
)
from .datasets import (
    EvaluationItem,
    EvaluationSet,
    load_dataset,
    read_tsv,
    write_scores,
    write_sweep,
    write_tsv,
)

__all__ = [
    "AlignmentMetricsError",
    "DatasetFormatError",
    "EmbeddingFormatError",
    "UndefinedCorrelationError",
    "EmbeddingFormat",
    "EmbeddingTable",
    "WordVector",
    "cosine",
    "load_binary_format",
    "load_embeddings",
    "load_text_format",
    "lookup",
    "save_binary_format",
    "save_text_format",
    "Segment",
    "TokenizerPolicy",
    "tokenize",
    "AssignmentResult",
    "solve_max_assignment",
    "Metric",
    "MetricConfig",
    "OOVPolicy",
    "PairSimilarityMatrix",
    "WordLink",
    "best_matches",
    "build_matrices",
    "build_matrix",
    "count_oov",
    "score",
    "score_aas",
    "score_batch",
    "score_has",
    "score_mas",
    "score_mas_asym",
    "score_matrix",
    "word_alignment",
    "word_similarity",
    "Coefficient",
    "JudgedSegment",
    "SweepRow",
    "average",
    "best_thresholds",
    "correlate",
    "kendall_tau_b",
    "pearson",
    "spearman",
    "EvaluationItem",
    "EvaluationSet",
    "load_dataset",
    "read_tsv",
    "write_scores",
    "write_sweep",
    "write_tsv",
]

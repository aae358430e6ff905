"""
Command-line front end.

    alignment-metrics score    --emb VECTORS DATASET [--metric mas] [--threshold 0.2] [--out FILE]
    alignment-metrics evaluate --emb VECTORS DATASET [DATASET ...] [--metric mas] [--threshold 0.2]
    alignment-metrics sweep    --emb VECTORS DATASET [--metrics aas mas has] [--thresholds ...]
    alignment-metrics align    --emb VECTORS --hyp TEXT --ref TEXT

Data goes to files or standard output; the run report goes to standard
error. Exit status is 0 on success, 1 on runtime errors and 2 on usage errors.

The list options of sweep (--metrics, --thresholds) consume every value that
follows them, so the DATASET argument goes before them.
"""

import argparse
import contextlib
import logging
import sys
import time
from dataclasses import dataclass
from typing import BinaryIO, Iterator, List, Optional, Sequence, Set, Tuple

from . import __version__
from .correlation import (
    Coefficient,
    JudgedSegment,
    SweepRow,
    average,
    best_thresholds,
    correlate,
    kendall_tau_b,
)
from .datasets import EvaluationSet, load_dataset, write_scores, write_sweep
from .embeddings import EmbeddingFormat, EmbeddingTable, load_embeddings
from .errors import AlignmentMetricsError
from .metrics import (
    Metric,
    MetricConfig,
    OOVPolicy,
    best_matches,
    build_matrices,
    count_oov,
    score,
    score_batch,
    score_matrix,
    word_alignment,
)
from .tokenization import Segment, TokenizerPolicy, tokenize

logger = logging.getLogger(__name__)

DEFAULT_GRID = tuple(round(0.1 * i, 1) for i in range(10))
_COEFFICIENT_KEYS = {Coefficient.KENDALL: "tau", Coefficient.PEARSON: "r",
                     Coefficient.SPEARMAN: "rho"}


@dataclass
class RunReport:
    """Summary of one command run, logged to standard error."""

    dataset: str
    metric: str
    threshold: Optional[float]
    items: int
    oov_tokens: int
    total_tokens: int
    elapsed: float
    tau: Optional[float] = None

    def __post_init__(self):
        if self.oov_tokens > self.total_tokens:
            raise ValueError("OOV count exceeds the token count")

    def __str__(self) -> str:
        parts = [f"dataset={self.dataset}", f"metric={self.metric}"]
        if self.threshold is not None:
            parts.append(f"threshold={self.threshold:.2f}")
        parts += [f"items={self.items}", f"oov={self.oov_tokens}/{self.total_tokens}",
                  f"elapsed={self.elapsed:.2f}s"]
        if self.tau is not None:
            parts.append(f"tau={self.tau:.4f}")
        return " ".join(parts)


def _threshold(value: str) -> float:
    try:
        theta = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid threshold {value!r}") from None
    if not 0.0 <= theta <= 1.0:
        raise argparse.ArgumentTypeError(f"threshold must lie in [0, 1], got {value}")
    return theta


def _workers(value: str) -> int:
    count = int(value)
    if count < 1:
        raise argparse.ArgumentTypeError("--workers must be at least 1")
    return count


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emb", required=True, metavar="PATH",
                        help="word2vec embedding file")
    common.add_argument("--format", dest="emb_format", default="auto",
                        choices=[f.value for f in EmbeddingFormat],
                        help="embedding file format (auto: .bin is binary, otherwise text)")
    common.add_argument("--tokenizer", default=TokenizerPolicy.PUNCT.value,
                        choices=[p.value for p in TokenizerPolicy],
                        help="tokenization policy (default: %(default)s)")
    common.add_argument("--oov", default=OOVPolicy.SURFACE.value,
                        choices=[p.value for p in OOVPolicy],
                        help="similarity of out-of-vocabulary tokens (default: %(default)s)")
    common.add_argument("--lowercase-fallback", action="store_true",
                        help="look up the lowercased token when the token itself is missing")
    common.add_argument("--no-restrict", action="store_true",
                        help="load the whole embedding file instead of only dataset tokens")
    common.add_argument("--workers", type=_workers, default=1,
                        help="threads used for batch scoring (default: %(default)s)")
    common.add_argument("--quiet", "-q", action="store_true", help="only log warnings and errors")
    common.add_argument("--verbose", "-v", action="store_true", help="log debug messages")

    metric_choices = [m.value for m in Metric]
    parser = argparse.ArgumentParser(
        prog="alignment-metrics",
        description="Word-alignment-based sentence similarity (AAS, MAS, HAS) for "
                    "segment-level MT evaluation.")
    parser.add_argument("-V", "--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    score_parser = commands.add_parser("score", parents=[common], help="score every segment pair")
    score_parser.add_argument("dataset", help="dataset TSV")
    score_parser.add_argument("--metric", type=str.lower, choices=metric_choices, default="mas")
    score_parser.add_argument("--threshold", type=_threshold, default=0.0)
    score_parser.add_argument("--out", default="-", help="score file (default: standard output)")
    score_parser.set_defaults(func=cmd_score)

    evaluate_parser = commands.add_parser("evaluate", parents=[common],
                                          help="correlate scores with human judgments")
    evaluate_parser.add_argument("datasets", nargs="+", help="dataset TSV(s) with human scores")
    evaluate_parser.add_argument("--metric", type=str.lower, choices=metric_choices, default="mas")
    evaluate_parser.add_argument("--threshold", type=_threshold, default=0.0)
    evaluate_parser.add_argument("--correlation", default=Coefficient.KENDALL.value,
                                 choices=[c.value for c in Coefficient])
    evaluate_parser.set_defaults(func=cmd_evaluate)

    sweep_parser = commands.add_parser("sweep", aliases=["sweep-threshold"], parents=[common],
                                       help="correlation of each metric over a threshold grid")
    sweep_parser.add_argument("dataset",
                              help="dataset TSV with human scores (give it before the list options)")
    sweep_parser.add_argument("--metrics", type=str.lower, nargs="+", choices=metric_choices,
                              default=metric_choices)
    sweep_parser.add_argument("--thresholds", type=_threshold, nargs="+",
                              default=list(DEFAULT_GRID))
    sweep_parser.add_argument("--out", default="-", help="CSV file (default: standard output)")
    sweep_parser.set_defaults(func=cmd_sweep)

    align_parser = commands.add_parser("align", parents=[common],
                                       help="show the word alignments of one sentence pair")
    align_parser.add_argument("--hyp", required=True, help="hypothesis sentence")
    align_parser.add_argument("--ref", required=True, help="reference sentence")
    align_parser.add_argument("--threshold", type=_threshold, default=0.0)
    align_parser.set_defaults(func=cmd_align)

    return parser


def _config(args: argparse.Namespace, metric: str = "mas", threshold: float = 0.0) -> MetricConfig:
    return MetricConfig(metric=metric, threshold=threshold, oov_policy=args.oov,
                        lowercase_fallback=args.lowercase_fallback, tokenizer=args.tokenizer)


def _segment_pairs(dataset: EvaluationSet, tokenizer: str) -> List[Tuple[Segment, Segment]]:
    return [(tokenize(item.hypothesis, tokenizer), tokenize(item.reference, tokenizer))
            for item in dataset]


def _load_table(args: argparse.Namespace, segments: Sequence[Segment]) -> EmbeddingTable:
    vocabulary: Optional[Set[str]] = None
    if not args.no_restrict:
        vocabulary = {token for segment in segments for token in segment}
        if args.lowercase_fallback:
            vocabulary |= {token.lower() for token in vocabulary}
    return load_embeddings(args.emb, args.emb_format, vocabulary, unicode_errors="replace")


def _flatten(pairs: Sequence[Tuple[Segment, Segment]]) -> List[Segment]:
    return [segment for pair in pairs for segment in pair]


def _oov_counts(segments: Sequence[Segment], table: EmbeddingTable,
                fallback: bool) -> Tuple[int, int]:
    oov = sum(count_oov(segment, table, fallback) for segment in segments)
    return oov, sum(len(segment) for segment in segments)


@contextlib.contextmanager
def _open_sink(path: str) -> Iterator[BinaryIO]:
    if path == "-":
        yield sys.stdout.buffer
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as sink:
            yield sink


def cmd_score(args: argparse.Namespace) -> int:
    """Score each dataset item and write ``segment_id<TAB>score`` lines."""
    start = time.perf_counter()
    config = _config(args, args.metric, args.threshold)
    dataset = load_dataset(args.dataset)
    pairs = _segment_pairs(dataset, config.tokenizer)
    segments = _flatten(pairs)
    table = _load_table(args, segments)

    scores = score_batch(pairs, table, config, workers=args.workers)
    with _open_sink(args.out) as sink:
        write_scores(dataset, scores, sink)

    oov, total = _oov_counts(segments, table, config.lowercase_fallback)
    report = RunReport(dataset.name, config.metric.label, config.threshold, len(dataset), oov,
                       total, time.perf_counter() - start)
    if len(dataset) == 0:
        logger.warning("no items to score")
    logger.info("%s", report)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    """Correlate metric scores with the human scores of one or more datasets."""
    start = time.perf_counter()
    config = _config(args, args.metric, args.threshold)
    coefficient = Coefficient(args.correlation)
    key = _COEFFICIENT_KEYS[coefficient]

    datasets = [load_dataset(path) for path in args.datasets]
    for dataset in datasets:
        dataset.human_scores()
    all_pairs = [_segment_pairs(dataset, config.tokenizer) for dataset in datasets]
    table = _load_table(args, [s for pairs in all_pairs for s in _flatten(pairs)])

    values = []
    for dataset, pairs in zip(datasets, all_pairs):
        scores = score_batch(pairs, table, config, workers=args.workers)
        judged = [JudgedSegment(item.segment_id, human, float(metric_score))
                  for item, human, metric_score in zip(dataset, dataset.human_scores(), scores)]
        value = correlate(judged, coefficient)
        values.append(value)

        prefix = f"dataset={dataset.name} " if len(datasets) > 1 else ""
        print(f"{prefix}metric={config.metric.value} threshold={config.threshold:.2f} "
              f"{key}={value:.4f} n={len(dataset)}")
        oov, total = _oov_counts(_flatten(pairs), table, config.lowercase_fallback)
        logger.info("%s", RunReport(dataset.name, config.metric.label, config.threshold,
                                    len(dataset), oov, total, time.perf_counter() - start,
                                    value))

    if len(datasets) > 1:
        print(f"dataset=average metric={config.metric.value} threshold={config.threshold:.2f} "
              f"{key}={average(values):.4f} n={sum(len(d) for d in datasets)}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    """Kendall's tau of every (metric, threshold) combination, written as CSV."""
    start = time.perf_counter()
    config = _config(args)
    dataset = load_dataset(args.dataset)
    human = dataset.human_scores()
    pairs = _segment_pairs(dataset, config.tokenizer)
    segments = _flatten(pairs)
    table = _load_table(args, segments)

    # matrices are built once and re-thresholded for every grid point
    matrices = build_matrices(pairs, table, config, workers=args.workers)
    rows: List[SweepRow] = []
    for metric in (Metric.parse(m) for m in args.metrics):
        for theta in args.thresholds:
            scores = [score_matrix(matrix, metric, theta) for matrix in matrices]
            rows.append(SweepRow(theta, metric.label, kendall_tau_b(list(zip(human, scores)))))

    with _open_sink(args.out) as sink:
        write_sweep(rows, sink)

    oov, total = _oov_counts(segments, table, config.lowercase_fallback)
    report = RunReport(dataset.name, ",".join(m.upper() for m in args.metrics), None,
                       len(dataset), oov, total, time.perf_counter() - start)
    logger.info("%s", report)
    best = best_thresholds(rows)
    logger.info("best: %s", " ".join(
        f"{name}@{row.threshold:.2f}={row.tau:.4f}" for name, row in best.items()))
    return 0


def cmd_align(args: argparse.Namespace) -> int:
    """Print the HAS 1:1 alignment and the MAS best matches of one sentence pair."""
    config = _config(args, threshold=args.threshold)
    hyp = tokenize(args.hyp, config.tokenizer)
    ref = tokenize(args.ref, config.tokenizer)
    table = _load_table(args, [hyp, ref])

    for metric, links in ((Metric.HAS, word_alignment(hyp, ref, table, config)),
                          (Metric.MAS, best_matches(hyp, ref, table, config))):
        print(f"{metric.label} {score(hyp, ref, table, config.with_metric(metric)):.6f}")
        for link in links:
            print(f"  {hyp[link.hyp_index]}\t{ref[link.ref_index]}\t{link.similarity:.4f}")
    return 0


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if args.quiet:
        level = logging.WARNING
    elif args.verbose:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, format="alignment-metrics: %(message)s")
    logging.getLogger("alignment_metrics").setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    try:
        return args.func(args)
    except (AlignmentMetricsError, OSError) as error:
        logger.error("%s", error)
        return 1


if __name__ == "__main__":
    sys.exit(main())

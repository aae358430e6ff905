"""
Evaluation datasets and result files.

Dataset TSV: one record per line, ``segment_id<TAB>hypothesis<TAB>reference``
with an optional fourth human-score column. Lines starting with '#' and blank
lines are ignored.
"""

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator, List, Optional, Sequence, Union

from .correlation import SweepRow
from .errors import DatasetFormatError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EvaluationItem:
    segment_id: str
    hypothesis: str
    reference: str
    human_score: Optional[float] = None


@dataclass
class EvaluationSet:
    """An ordered list of hypothesis/reference items with unique ids."""

    name: str
    items: List[EvaluationItem] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for item in self.items:
            if item.segment_id in seen:
                raise DatasetFormatError(f"duplicate segment id {item.segment_id!r}")
            seen.add(item.segment_id)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[EvaluationItem]:
        return iter(self.items)

    @property
    def has_human_scores(self) -> bool:
        return all(item.human_score is not None for item in self.items)

    def missing_human_scores(self) -> List[str]:
        return [item.segment_id for item in self.items if item.human_score is None]

    def human_scores(self) -> List[float]:
        missing = self.missing_human_scores()
        if missing:
            raise DatasetFormatError(
                f"{self.name}: {len(missing)} item(s) lack a human score, first {missing[0]!r}")
        return [float(item.human_score) for item in self.items]  # type: ignore[arg-type]


def read_tsv(source: BinaryIO, name: str = "") -> EvaluationSet:
    """Parse a UTF-8 dataset TSV stream, preserving input order."""
    items: List[EvaluationItem] = []
    seen = set()

    for line_number, raw in enumerate(source.read().split(b"\n"), start=1):
        try:
            line = raw.decode("utf-8").rstrip("\r")
        except UnicodeDecodeError:
            raise DatasetFormatError("not valid UTF-8 text", line_number) from None
        if not line.strip() or line.startswith("#"):
            continue
        columns = line.split("\t")
        if len(columns) not in (3, 4):
            raise DatasetFormatError(
                f"expected 3 or 4 tab-separated columns, got {len(columns)}", line_number)
        segment_id = columns[0]
        if not segment_id:
            raise DatasetFormatError("empty segment id", line_number)
        if segment_id in seen:
            raise DatasetFormatError(f"duplicate segment id {segment_id!r}", line_number)
        seen.add(segment_id)

        human_score = None
        if len(columns) == 4:
            try:
                human_score = float(columns[3])
            except ValueError:
                raise DatasetFormatError(
                    f"unparseable human score {columns[3]!r}", line_number) from None
            if not math.isfinite(human_score):
                raise DatasetFormatError(f"non-finite human score {columns[3]!r}", line_number)
        items.append(EvaluationItem(segment_id, columns[1], columns[2], human_score))

    return EvaluationSet(name, items)


def load_dataset(path: Union[str, Path]) -> EvaluationSet:
    """Read a dataset TSV file; the set is named after the file stem."""
    path = Path(path)
    with open(path, "rb") as source:
        dataset = read_tsv(source, name=path.stem)
    logger.info("read %d item(s) from %s", len(dataset), path)
    if len(dataset) == 0:
        logger.warning("dataset %s is empty", path)
    return dataset


def write_tsv(dataset: EvaluationSet, sink: BinaryIO) -> None:
    """Write ``dataset`` in the format read_tsv accepts."""
    for item in dataset:
        columns = [item.segment_id, item.hypothesis, item.reference]
        if item.human_score is not None:
            columns.append(repr(item.human_score))
        sink.write(("\t".join(columns) + "\n").encode("utf-8"))


def write_scores(dataset: EvaluationSet, scores: Sequence[float], sink: BinaryIO) -> None:
    """Write ``segment_id<TAB>score`` lines, scores to 6 decimal places."""
    if len(scores) != len(dataset):
        raise ValueError(f"got {len(scores)} score(s) for {len(dataset)} item(s)")
    for item, value in zip(dataset, scores):
        sink.write(f"{item.segment_id}\t{value:.6f}\n".encode("utf-8"))


def write_sweep(rows: Iterable[SweepRow], sink: BinaryIO) -> None:
    """Write threshold sweep rows as CSV: threshold (2 decimals), metric, tau (4 decimals)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["threshold", "metric", "tau"])
    for threshold, metric, tau in rows:
        writer.writerow([f"{threshold:.2f}", metric, f"{tau:.4f}"])
    sink.write(buffer.getvalue().encode("utf-8"))

"""
Pre-trained word embeddings: storage, lookup, cosine similarity and the
word2vec text/binary file formats.

Vectors are held as float64 regardless of the precision they were stored in,
so that similarity arithmetic over long batches does not accumulate float32
rounding.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import AbstractSet, BinaryIO, Dict, Iterable, Iterator, List, Optional, Sequence, Union

import numpy as np

from .errors import EmbeddingFormatError

logger = logging.getLogger(__name__)

REAL = np.float64
# word2vec binary files store little-endian float32 components
BINARY_REAL = np.dtype("<f4")


class EmbeddingFormat(str, Enum):
    """On-disk embedding file format."""

    BINARY = "bin"
    TEXT = "text"
    AUTO = "auto"

    def resolve(self, path: Union[str, Path]) -> "EmbeddingFormat":
        """Pick a concrete format, using the file extension for AUTO."""
        if self is not EmbeddingFormat.AUTO:
            return self
        if Path(path).suffix.lower() == ".bin":
            return EmbeddingFormat.BINARY
        return EmbeddingFormat.TEXT


@dataclass(frozen=True)
class WordVector:
    """A single embedding row together with its Euclidean norm."""

    components: np.ndarray
    norm: float

    @classmethod
    def from_components(cls, components: Sequence[float]) -> "WordVector":
        array = np.array(components, dtype=REAL)
        array.setflags(write=False)
        return cls(array, float(np.linalg.norm(array)))

    @property
    def dimension(self) -> int:
        return int(self.components.shape[0])

    def __len__(self) -> int:
        return self.dimension


class EmbeddingTable:
    """
    Immutable token -> vector map with cached norms.

    Rows are stored in a single float64 matrix; a second matrix holds the
    rows scaled to unit length (zero rows stay zero) so that cosine
    similarity matrices between two token lists reduce to one product.
    """

    def __init__(self, tokens: Sequence[str], vectors, dimension: Optional[int] = None,
                 duplicates: int = 0):
        """
        Parameters:
        -----------
        tokens : Sequence[str]
            Unique tokens, one per row of ``vectors``
        vectors : array-like
            len(tokens) x dimension matrix of reals
        dimension : int, optional
            Required only when ``tokens`` is empty
        duplicates : int
            Number of duplicate entries dropped while loading (reporting only)
        """
        tokens = list(tokens)
        if len(tokens) == 0 and dimension is not None:
            matrix = np.zeros((0, dimension), dtype=REAL)
        else:
            matrix = np.array(vectors, dtype=REAL, ndmin=2)
        if matrix.ndim != 2 or matrix.shape[0] != len(tokens):
            raise ValueError(
                f"expected a {len(tokens)}-row vector matrix, got shape {matrix.shape}")
        if dimension is not None and matrix.shape[1] != dimension:
            raise ValueError(f"vectors have {matrix.shape[1]} components, expected {dimension}")
        if matrix.shape[1] < 1:
            raise ValueError("embedding dimension must be positive")
        if not np.all(np.isfinite(matrix)):
            raise ValueError("embedding vectors must be finite")

        index: Dict[str, int] = {}
        for row, token in enumerate(tokens):
            if token in index:
                raise ValueError(f"duplicate token {token!r}")
            index[token] = row

        norms = np.linalg.norm(matrix, axis=1)
        unit = np.zeros_like(matrix)
        np.divide(matrix, norms[:, None], out=unit, where=norms[:, None] > 0)
        for array in (matrix, norms, unit):
            array.setflags(write=False)

        self._tokens = tuple(tokens)
        self._index = index
        self._vectors = matrix
        self._norms = norms
        self._unit = unit
        self.duplicates = duplicates

    @property
    def dimension(self) -> int:
        return int(self._vectors.shape[1])

    @property
    def tokens(self) -> Sequence[str]:
        return self._tokens

    @property
    def vectors(self) -> np.ndarray:
        return self._vectors

    @property
    def norms(self) -> np.ndarray:
        return self._norms

    @property
    def unit_vectors(self) -> np.ndarray:
        return self._unit

    def __len__(self) -> int:
        return len(self._tokens)

    def __contains__(self, token: object) -> bool:
        return token in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self._tokens)

    def __getitem__(self, token: str) -> WordVector:
        row = self._index[token]
        return WordVector(self._vectors[row], float(self._norms[row]))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(tokens={len(self)}, dimension={self.dimension})"

    def index_of(self, token: str, fallback_lowercase: bool = False) -> Optional[int]:
        """Row of ``token``, trying its lowercased form when allowed."""
        row = self._index.get(token)
        if row is None and fallback_lowercase:
            row = self._index.get(token.lower())
        return row

    def lookup(self, token: str, fallback_lowercase: bool = False) -> Optional[WordVector]:
        row = self.index_of(token, fallback_lowercase)
        if row is None:
            return None
        return WordVector(self._vectors[row], float(self._norms[row]))

    def restrict(self, vocabulary: AbstractSet[str]) -> "EmbeddingTable":
        """Return a new table holding only the tokens in ``vocabulary``."""
        rows = [row for row, token in enumerate(self._tokens) if token in vocabulary]
        return EmbeddingTable([self._tokens[r] for r in rows], self._vectors[rows],
                              dimension=self.dimension)


def lookup(table: EmbeddingTable, token: str,
           fallback_lowercase: bool = False) -> Optional[WordVector]:
    """Vector for ``token``, or for its lowercased form if allowed; None when absent."""
    return table.lookup(token, fallback_lowercase)


def cosine(u: WordVector, v: WordVector) -> float:
    """Cosine similarity in [-1, 1]; 0 when either vector has zero norm."""
    if u.norm == 0.0 or v.norm == 0.0:
        return 0.0
    value = float(np.dot(u.components, v.components)) / (u.norm * v.norm)
    return min(1.0, max(-1.0, value))


class _TableBuilder:
    """Collects rows while loading, honouring first-occurrence and vocabulary rules."""

    def __init__(self, dimension: int, vocabulary: Optional[AbstractSet[str]] = None):
        self.dimension = dimension
        self.vocabulary = vocabulary
        self.tokens: List[str] = []
        self.rows: List[np.ndarray] = []
        self.seen: set = set()
        self.duplicates = 0
        self.skipped = 0

    def wants(self, token: str) -> bool:
        if token in self.seen:
            self.duplicates += 1
            return False
        self.seen.add(token)
        if self.vocabulary is not None and token not in self.vocabulary:
            self.skipped += 1
            return False
        return True

    def add(self, token: str, components: np.ndarray) -> None:
        self.tokens.append(token)
        self.rows.append(components)

    def build(self) -> EmbeddingTable:
        if self.duplicates:
            logger.warning("ignored %d duplicate token(s), keeping first occurrences",
                           self.duplicates)
        if self.skipped:
            logger.debug("skipped %d token(s) outside the requested vocabulary", self.skipped)
        if self.rows:
            vectors = np.vstack(self.rows)
        else:
            vectors = np.zeros((0, self.dimension), dtype=REAL)
        return EmbeddingTable(self.tokens, vectors, dimension=self.dimension,
                              duplicates=self.duplicates)


def _parse_header(fields: List[str]) -> Optional[tuple]:
    if len(fields) != 2:
        return None
    try:
        return int(fields[0]), int(fields[1])
    except ValueError:
        return None


def load_text_format(source: BinaryIO, vocabulary: Optional[AbstractSet[str]] = None,
                     encoding: str = "utf8", unicode_errors: str = "strict") -> EmbeddingTable:
    """
    Read embeddings in word2vec text format.

    An optional "V D" header is recognised on the first line; without it
    the dimension is taken from the first row. Blank lines are ignored.

    Parameters:
    -----------
    source : BinaryIO
        Byte stream positioned at the start of the file
    vocabulary : set of str, optional
        When given, only these tokens are kept (rows outside it are checked
        for their component count but not parsed)
    """
    builder: Optional[_TableBuilder] = None
    declared = None
    seen_content = False

    for line_number, raw in enumerate(source, start=1):
        try:
            line = raw.decode(encoding, errors=unicode_errors).rstrip("\r\n").rstrip(" ")
        except UnicodeDecodeError:
            raise EmbeddingFormatError(f"not valid {encoding} text", line_number) from None
        if not line.strip():
            continue
        fields = line.split(" ")

        if not seen_content:
            seen_content = True
            declared = _parse_header(fields)
            if declared is not None:
                if declared[1] < 1:
                    raise EmbeddingFormatError(f"invalid dimension {declared[1]}", line_number)
                builder = _TableBuilder(declared[1], vocabulary)
                continue

        if builder is None:
            if len(fields) < 2:
                raise EmbeddingFormatError("row has no vector components", line_number)
            builder = _TableBuilder(len(fields) - 1, vocabulary)

        token, values = fields[0], fields[1:]
        if len(values) != builder.dimension:
            raise EmbeddingFormatError(
                f"expected {builder.dimension} components, got {len(values)}", line_number)
        if not builder.wants(token):
            continue
        try:
            components = np.array([float(v) for v in values], dtype=REAL)
        except ValueError:
            raise EmbeddingFormatError(f"unparseable component in row for {token!r}",
                                       line_number) from None
        if not np.all(np.isfinite(components)):
            raise EmbeddingFormatError(f"non-finite component in row for {token!r}",
                                       line_number)
        builder.add(token, components)

    if not seen_content:
        raise EmbeddingFormatError("empty embedding stream")
    assert builder is not None
    if declared is not None:
        found = len(builder.seen) + builder.duplicates
        if found != declared[0]:
            logger.warning("header declares %d rows but the stream holds %d", declared[0], found)
    return builder.build()


def _read_token(source: BinaryIO, index: int, encoding: str, unicode_errors: str) -> str:
    chunks = bytearray()
    while True:
        ch = source.read(1)
        if not ch:
            raise EmbeddingFormatError("stream truncated inside token", record_index=index)
        if ch == b" ":
            break
        if ch == b"\n" and not chunks:
            # newline terminating the previous record
            continue
        chunks += ch
    if not chunks:
        raise EmbeddingFormatError("empty token", record_index=index)
    try:
        return chunks.decode(encoding, errors=unicode_errors)
    except UnicodeDecodeError:
        raise EmbeddingFormatError(f"token is not valid {encoding}", record_index=index) from None


def load_binary_format(source: BinaryIO, vocabulary: Optional[AbstractSet[str]] = None,
                       encoding: str = "utf8", unicode_errors: str = "strict") -> EmbeddingTable:
    """
    Read embeddings in word2vec binary format.

    The stream holds an ASCII "V D" header line followed by V records of
    ``token<space>`` and D little-endian float32 values, each record
    optionally followed by a newline. Components are widened to float64.
    """
    header = source.readline()
    if not header:
        raise EmbeddingFormatError("empty embedding stream")
    declared = _parse_header(header.decode("ascii", errors="replace").split())
    if declared is None:
        raise EmbeddingFormatError(f"invalid header {header[:40]!r}", line_number=1)
    vocab_size, dimension = declared
    if vocab_size < 0 or dimension < 1:
        raise EmbeddingFormatError(f"invalid header {header[:40]!r}", line_number=1)

    builder = _TableBuilder(dimension, vocabulary)
    record_bytes = BINARY_REAL.itemsize * dimension
    for index in range(vocab_size):
        token = _read_token(source, index, encoding, unicode_errors)
        data = source.read(record_bytes)
        if len(data) < record_bytes:
            raise EmbeddingFormatError(
                f"stream truncated inside vector ({len(data)} of {record_bytes} bytes)",
                record_index=index)
        if not builder.wants(token):
            continue
        components = np.frombuffer(data, dtype=BINARY_REAL).astype(REAL)
        if not np.all(np.isfinite(components)):
            raise EmbeddingFormatError(f"non-finite component in vector for {token!r}",
                                       record_index=index)
        builder.add(token, components)
    return builder.build()


def save_binary_format(table: EmbeddingTable, sink: BinaryIO) -> None:
    """Write ``table`` in word2vec binary format (components narrowed to float32)."""
    sink.write(f"{len(table)} {table.dimension}\n".encode("ascii"))
    for token, row in zip(table.tokens, table.vectors):
        sink.write(token.encode("utf8") + b" ")
        sink.write(row.astype(BINARY_REAL).tobytes())
        sink.write(b"\n")


def save_text_format(table: EmbeddingTable, sink: BinaryIO) -> None:
    """Write ``table`` in word2vec text format with full float64 precision."""
    sink.write(f"{len(table)} {table.dimension}\n".encode("ascii"))
    for token, row in zip(table.tokens, table.vectors):
        values = " ".join(repr(v) for v in row.tolist())
        sink.write(f"{token} {values}\n".encode("utf8"))


def load_embeddings(path: Union[str, Path], fmt: Union[str, EmbeddingFormat] = EmbeddingFormat.AUTO,
                    vocabulary: Optional[Iterable[str]] = None,
                    unicode_errors: str = "strict") -> EmbeddingTable:
    """
    Load an embedding file from disk.

    Parameters:
    -----------
    path : str or Path
        Embedding file
    fmt : str or EmbeddingFormat
        "bin", "text" or "auto" (binary for a .bin suffix, text otherwise)
    vocabulary : iterable of str, optional
        Restrict loading to these tokens
    """
    fmt = EmbeddingFormat(fmt).resolve(path)
    restrict = frozenset(vocabulary) if vocabulary is not None else None
    logger.info("loading %s embeddings from %s", fmt.value, path)
    with open(path, "rb") as source:
        if fmt is EmbeddingFormat.BINARY:
            table = load_binary_format(source, restrict, unicode_errors=unicode_errors)
        else:
            table = load_text_format(source, restrict, unicode_errors=unicode_errors)
    logger.info("loaded %d vectors of dimension %d%s", len(table), table.dimension,
                " (vocabulary-restricted)" if restrict is not None else "")
    return table


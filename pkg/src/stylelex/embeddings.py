"""Fixed-vocabulary word-vector table with exact nearest-neighbor queries.

The table is loaded from the plain-text word-vector format (header line
``"V D"``, then one row per word: the surface form followed by D decimal
components, single-space separated, UTF-8, LF line endings). Queries are
exact brute-force cosine scans so that lexicon expansion is reproducible;
no approximate index is used.

Vocabulary surfaces are NFC-normalized at load time and matched by exact
string equality afterwards (no case folding: style cues can be
case-sensitive). A surface may contain internal spaces; since the header
fixes the dimension D, the last D fields of a row are the components and
everything before them is the word.
"""

from __future__ import annotations

import logging
import math
import unicodedata
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import SchemaError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Neighbor:
    """One nearest-neighbor hit: a vocabulary surface and its cosine similarity."""

    word: str
    similarity: float


class EmbeddingTable:
    """Immutable word -> vector map supporting lookup, k-NN and centroid queries.

    Concurrent read queries are safe once constructed; construction itself is
    single-threaded.
    """

    def __init__(self, vocab: Sequence[str], vectors: np.ndarray):
        vectors = np.asarray(vectors, dtype=np.float64)
        if vectors.ndim != 2 or vectors.shape[0] != len(vocab):
            raise ValueError(
                f"vectors must be a {len(vocab)} x D matrix, got shape {vectors.shape}"
            )
        if vectors.shape[1] == 0:
            raise ValueError("embedding dimension must be positive")
        if not np.all(np.isfinite(vectors)):
            raise ValueError("all vector components must be finite")
        self.vocab: list[str] = [unicodedata.normalize("NFC", w) for w in vocab]
        if len(set(self.vocab)) != len(self.vocab):
            raise ValueError("vocabulary entries must be unique")
        if any(not w for w in self.vocab):
            raise ValueError("vocabulary entries must be non-empty")
        self.vectors = vectors
        self.vectors.setflags(write=False)
        self.dim: int = int(vectors.shape[1])
        self._index: dict[str, int] = {w: i for i, w in enumerate(self.vocab)}
        self._norms = np.linalg.norm(self.vectors, axis=1)
        # Rows loaded by skipping duplicate surfaces; informational only.
        self.skipped_duplicates: int = 0

    def __len__(self) -> int:
        return len(self.vocab)

    def __contains__(self, word: str) -> bool:
        return unicodedata.normalize("NFC", word) in self._index

    def lookup(self, word: str) -> np.ndarray | None:
        """Return the vector for ``word``, or None if it is out of vocabulary."""
        i = self._index.get(unicodedata.normalize("NFC", word))
        return None if i is None else self.vectors[i]


def load_table(source: IO[bytes] | IO[str] | Iterable[str]) -> EmbeddingTable:
    """Parse a word-vector text stream into an :class:`EmbeddingTable`.

    Duplicate surfaces keep the first occurrence; the number skipped is
    warned about and recorded on ``table.skipped_duplicates``. Malformed
    headers, rows with the wrong component count and non-finite components
    raise :class:`SchemaError` carrying the 1-based line number.
    """
    lines = _decoded_lines(source)
    try:
        header = next(lines)
    except StopIteration:
        raise SchemaError("line 1: empty stream, expected 'V D' header") from None
    parts = header.split(" ")
    if len(parts) != 2:
        raise SchemaError(f"line 1: malformed header {header!r}, expected 'V D'")
    try:
        count, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise SchemaError(f"line 1: malformed header {header!r}, expected 'V D'") from None
    if count < 0 or dim <= 0:
        raise SchemaError(f"line 1: malformed header {header!r}, counts must be positive")

    vocab: list[str] = []
    rows: list[list[float]] = []
    seen: dict[str, int] = {}
    skipped = 0
    n_rows = 0
    for lineno, line in enumerate(lines, start=2):
        if line == "" and n_rows >= count:
            continue  # tolerate trailing blank lines
        n_rows += 1
        if n_rows > count:
            raise SchemaError(f"line {lineno}: more rows than the header's {count}")
        fields = line.split(" ")
        if len(fields) < dim + 1:
            raise SchemaError(
                f"line {lineno}: expected {dim} components, got {len(fields) - 1}"
            )
        word = unicodedata.normalize("NFC", " ".join(fields[: len(fields) - dim]))
        if not word:
            raise SchemaError(f"line {lineno}: empty word")
        try:
            comps = [float(c) for c in fields[len(fields) - dim :]]
        except ValueError as exc:
            raise SchemaError(f"line {lineno}: bad component ({exc})") from None
        if not all(math.isfinite(c) for c in comps):
            raise SchemaError(f"line {lineno}: non-finite component")
        if word in seen:
            skipped += 1
            continue
        seen[word] = len(vocab)
        vocab.append(word)
        rows.append(comps)
    if n_rows < count:
        raise SchemaError(f"line {n_rows + 1}: expected {count} rows, got {n_rows}")

    matrix = np.array(rows, dtype=np.float64) if rows else np.zeros((0, dim))
    table = EmbeddingTable(vocab, matrix)
    table.skipped_duplicates = skipped
    if skipped:
        logger.warning("skipped %d duplicate vocabulary rows (first occurrence kept)", skipped)
    return table


def save_table(table: EmbeddingTable) -> str:
    """Serialize a table back to the word-vector text format.

    Components are written with shortest round-trip float formatting, so a
    table loaded from output of this function re-serializes byte-identically.
    """
    out = [f"{len(table.vocab)} {table.dim}"]
    for word, row in zip(table.vocab, table.vectors):
        out.append(word + " " + " ".join(repr(float(c)) for c in row))
    return "\n".join(out) + "\n"


def cosine(u: Sequence[float] | np.ndarray, v: Sequence[float] | np.ndarray) -> float:
    """Cosine similarity of two equal-dimension vectors; both must have norm > 0."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine undefined for zero-norm input")
    return float(np.dot(u, v) / (nu * nv))


def knn(
    table: EmbeddingTable,
    query: Sequence[float] | np.ndarray,
    k: int,
    min_sim: float,
) -> list[Neighbor]:
    """Up to ``k`` vocabulary entries with cosine similarity >= ``min_sim``.

    Results are sorted by similarity descending, ties broken by vocabulary
    order. The scan is exhaustive and exact. A query equal to a vocab
    word's vector includes that word; callers may exclude it themselves.
    """
    query = np.asarray(query, dtype=np.float64)
    if query.shape != (table.dim,):
        raise ValueError(f"query dimension {query.shape} != table dimension ({table.dim},)")
    if k < 1:
        raise ValueError("k must be a positive integer")
    qnorm = float(np.linalg.norm(query))
    if qnorm == 0.0:
        raise ValueError("cosine undefined for zero-norm query")
    denom = table._norms * qnorm
    sims = np.divide(
        table.vectors @ query,
        denom,
        out=np.full(len(table.vocab), -np.inf),
        where=denom > 0,
    )
    # Stable argsort on -sims keeps vocab order within ties.
    order = np.argsort(-sims, kind="stable")
    out: list[Neighbor] = []
    for i in order:
        s = float(sims[i])
        if s < min_sim or not math.isfinite(s):
            break
        out.append(Neighbor(table.vocab[int(i)], s))
        if len(out) == k:
            break
    return out


def centroid(table: EmbeddingTable, words: Iterable[str]) -> np.ndarray:
    """Arithmetic mean of the vectors of the listed words that are in the table.

    Absent words are skipped (and logged); if no word is present, raises
    ValueError.
    """
    present: list[np.ndarray] = []
    absent: list[str] = []
    for w in words:
        vec = table.lookup(w)
        if vec is None:
            absent.append(w)
        else:
            present.append(vec)
    if absent:
        logger.warning("centroid: %d words not in table: %s", len(absent), ", ".join(absent))
    if not present:
        raise ValueError("no listed word is present in the table")
    return np.mean(np.stack(present), axis=0)


def _decoded_lines(source: IO[bytes] | IO[str] | Iterable[str]) -> Iterable[str]:
    for raw in source:
        if isinstance(raw, bytes):
            yield raw.decode("utf-8").rstrip("\n").rstrip("\r")
        else:
            yield raw.rstrip("\n").rstrip("\r")

"""Word tokenization and embedding lookup.

Turns raw text into a sequence of unit-norm word vectors: tokenize,
look each token up in a pretrained embedding table, normalize. Because
every output vector has Euclidean norm 1, a plain dot product between
two of them is exactly their cosine similarity, which is what the
autocorrelation stage consumes.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence, Union

import numpy as np

from .errors import EmptyTable, EmptyVocabularyOverlap, MalformedEmbeddingFile

# Maximal runs of Unicode letters/digits/apostrophes; everything else
# (including underscore) separates tokens.
_TOKEN_RE = re.compile(r"(?:[^\W_]|')+")

UNIT_NORM_TOL = 1e-9


@dataclass(frozen=True)
class TokenSequence:
    """Lowercased word tokens plus their start offsets in the source text."""

    tokens: list[str]
    source_char_offsets: list[int]

    def __post_init__(self) -> None:
        if len(self.tokens) != len(self.source_char_offsets):
            raise ValueError("tokens and offsets must have equal length")

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def tokenize(raw_text: str) -> TokenSequence:
    """Split text into lowercase word tokens.

    A token is a maximal run of Unicode letters, digits, and apostrophes;
    all other characters are separators. Empty input yields an empty
    sequence.
    """
    tokens: list[str] = []
    offsets: list[int] = []
    for m in _TOKEN_RE.finditer(raw_text):
        tokens.append(m.group().lower())
        offsets.append(m.start())
    return TokenSequence(tokens, offsets)


class EmbeddingTable:
    """Immutable word -> d-dim vector table.

    Safe to share across threads after construction; the backing matrix
    is marked read-only. Vectors are stored as loaded (not normalized);
    normalization happens once per text in :func:`embed_sequence`.
    """

    def __init__(self, name: str, words: Sequence[str], matrix: np.ndarray):
        matrix = np.ascontiguousarray(np.asarray(matrix, dtype=np.float64))
        if matrix.ndim != 2 or matrix.shape[0] != len(words):
            raise ValueError("matrix must be (len(words), d)")
        if matrix.shape[1] < 1:
            raise ValueError("dimension must be positive")
        norms = np.linalg.norm(matrix, axis=1)
        if not np.all(np.isfinite(matrix)):
            raise ValueError("vectors must be finite")
        if np.any(norms == 0.0):
            raise ValueError("zero vectors are not allowed")
        matrix.flags.writeable = False
        norms.flags.writeable = False
        self.name = name
        self._index: dict[str, int] = {w: i for i, w in enumerate(words)}
        if len(self._index) != len(words):
            raise ValueError("duplicate words")
        self._matrix = matrix
        self._norms = norms

    @property
    def dimension(self) -> int:
        return self._matrix.shape[1]

    def __len__(self) -> int:
        return self._matrix.shape[0]

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def vector(self, word: str) -> np.ndarray:
        return self._matrix[self._index[word]]

    def row_index(self, word: str) -> int | None:
        return self._index.get(word)

    def unit_rows(self, rows: np.ndarray) -> np.ndarray:
        """Return the selected vectors, each divided by its Euclidean norm."""
        return self._matrix[rows] / self._norms[rows, None]


@dataclass(frozen=True)
class UnitVectorSequence:
    """An ordered (N, d) array of unit-norm vectors, one per kept token."""

    vectors: np.ndarray
    dropped_oov_fraction: float = 0.0

    def __post_init__(self) -> None:
        v = np.ascontiguousarray(np.asarray(self.vectors, dtype=np.float64))
        if v.ndim != 2:
            raise ValueError("vectors must be a 2-D array")
        if v.shape[0] > 0:
            err = np.abs(np.linalg.norm(v, axis=1) - 1.0)
            if float(err.max()) >= UNIT_NORM_TOL:
                raise ValueError(
                    f"vectors must be unit norm within {UNIT_NORM_TOL:g} "
                    f"(worst deviation {float(err.max()):.3e})"
                )
        if not 0.0 <= self.dropped_oov_fraction <= 1.0:
            raise ValueError("dropped_oov_fraction must be in [0, 1]")
        object.__setattr__(self, "vectors", v)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]


Source = Union[str, Path, IO[bytes], IO[str]]


def _iter_lines(source: Source) -> Iterable[str]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            yield from fh
    elif isinstance(source, io.TextIOBase):
        yield from source
    else:
        yield from io.TextIOWrapper(source, encoding="utf-8")


def load_embedding_table(source: Source, name: str | None = None) -> EmbeddingTable:
    """Parse an embedding table in the plain-text format.

    One entry per line: the word, then its components, single-space
    separated, no header. The dimension is taken from the first entry.
    Duplicate words keep their first occurrence; all-zero vectors are
    rejected (dropped) because a cosine against them is undefined.

    Raises :class:`MalformedEmbeddingFile` on non-numeric or non-finite
    components or inconsistent dimension, :class:`EmptyTable` when no
    entries survive.
    """
    if name is None:
        name = Path(source).name if isinstance(source, (str, Path)) else "embeddings"
    words: list[str] = []
    rows: list[np.ndarray] = []
    seen: set[str] = set()
    dim: int | None = None
    for lineno, line in enumerate(_iter_lines(source), start=1):
        line = line.rstrip("\r\n")
        if not line:
            continue
        parts = line.split(" ")
        word, comps = parts[0], parts[1:]
        if dim is None:
            if len(comps) == 0:
                raise MalformedEmbeddingFile(f"line {lineno}: entry has no components")
            dim = len(comps)
        elif len(comps) != dim:
            raise MalformedEmbeddingFile(
                f"line {lineno}: expected {dim} components, found {len(comps)}"
            )
        try:
            vec = np.array(comps, dtype=np.float64)
        except ValueError:
            raise MalformedEmbeddingFile(
                f"line {lineno}: non-numeric component"
            ) from None
        if not np.all(np.isfinite(vec)):
            raise MalformedEmbeddingFile(f"line {lineno}: non-finite component")
        if word in seen:
            continue
        if not vec.any():
            continue
        seen.add(word)
        words.append(word)
        rows.append(vec)
    if not rows:
        raise EmptyTable("no usable entries in embedding source")
    return EmbeddingTable(name, words, np.vstack(rows))


def embed_sequence(
    tokens: TokenSequence | Sequence[str], table: EmbeddingTable
) -> UnitVectorSequence:
    """Map tokens to unit vectors, dropping out-of-vocabulary tokens.

    Positions close up: the output sequence has one vector per
    in-vocabulary token, in source order. The dropped fraction is
    recorded on the result. Raises :class:`EmptyVocabularyOverlap` when
    no token is in the table.
    """
    token_list = list(tokens.tokens if isinstance(tokens, TokenSequence) else tokens)
    kept = [r for r in (table.row_index(t) for t in token_list) if r is not None]
    if not kept:
        raise EmptyVocabularyOverlap(
            f"none of the {len(token_list)} tokens are in table '{table.name}'"
        )
    vectors = table.unit_rows(np.asarray(kept, dtype=np.intp))
    dropped = 1.0 - len(kept) / len(token_list)
    return UnitVectorSequence(vectors, dropped_oov_fraction=dropped)

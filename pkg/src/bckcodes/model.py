"""Domain types: operation tables, posets, codewords, reports.

All values are immutable after construction and validate their own
invariants, so they can be shared freely across workers.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import UsageError

STAR = "star"
DOT = "dot"


def _frozen_array(values, dtype):
    arr = np.ascontiguousarray(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class OpTable:
    """An n-by-n operation table over element indices 0..n-1.

    `kind` is "star" for the order-style operation (x below y gives the
    distinguished element) and "dot" for its transpose, the implication-style
    operation.  `theta` is the distinguished element; every constructor in
    this package produces tables with theta == 0.
    """

    table: np.ndarray
    kind: str
    theta: int = 0
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        arr = _frozen_array(self.table, np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise UsageError(f"operation table must be square and nonempty, got shape {arr.shape}")
        n = arr.shape[0]
        if self.kind not in (STAR, DOT):
            raise UsageError(f"unknown table kind {self.kind!r}")
        if not (0 <= self.theta < n):
            raise UsageError(f"theta index {self.theta} out of range for n={n}")
        if arr.min() < 0 or arr.max() >= n:
            bad = int(np.argmax((arr < 0) | (arr >= n)))
            raise UsageError(f"table entry {arr.flat[bad]} at cell ({bad // n}, {bad % n}) is out of range [0, {n})")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != n:
                raise UsageError(f"expected {n} labels, got {len(labels)}")
            if any(not s for s in labels) or len(set(labels)) != n:
                raise UsageError("labels must be distinct non-empty strings")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", arr)

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def __eq__(self, other):
        if not isinstance(other, OpTable):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.theta == other.theta
            and self.labels == other.labels
            and np.array_equal(self.table, other.table)
        )


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of an exhaustive axiom scan.

    `violations` holds (axiom number, witness) pairs; the witness is the
    first offending tuple in lexicographic scan order, so reports are
    reproducible.
    """

    kind_checked: str
    violations: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class PropertyFlags:
    """Commutativity / implicativity / positive implicativity of a BCK table,
    each with the first counterexample when false."""

    commutative: bool
    implicative: bool
    positive_implicative: bool
    commutative_witness: tuple[int, int] | None = None
    implicative_witness: tuple[int, int] | None = None
    positive_implicative_witness: tuple[int, int, int] | None = None


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    mapping: tuple[int, ...] | None = None


class Comparison(Enum):
    LESS_EQ = "less_eq"
    GREATER_EQ = "greater_eq"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Codeword:
    """A fixed-length bit string."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise UsageError("codewords must have positive length")
        if any(b not in (0, 1) for b in bits):
            raise UsageError(f"codeword bits must be 0 or 1, got {bits}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, text: str) -> "Codeword":
        if not text or any(c not in "01" for c in text):
            raise UsageError(f"codeword string must be non-empty over {{0,1}}, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def ones(cls, length: int) -> "Codeword":
        return cls((1,) * length)

    @property
    def length(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class BlockCode:
    """An ordered collection of distinct codewords of equal length."""

    words: tuple[Codeword, ...]

    def __post_init__(self):
        words = tuple(self.words)
        if not words:
            raise UsageError("a block code needs at least one codeword")
        m = words[0].length
        if any(w.length != m for w in words):
            raise UsageError("all codewords in a block code must share one length")
        if len(set(words)) != len(words):
            raise UsageError("block code contains duplicate codewords")
        object.__setattr__(self, "words", words)

    @classmethod
    def from_strings(cls, texts) -> "BlockCode":
        return cls(tuple(Codeword.from_string(t) for t in texts))

    @property
    def word_length(self) -> int:
        return self.words[0].length

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([w.bits for w in self.words], dtype=np.uint8)

    def strings(self) -> tuple[str, ...]:
        return tuple(str(w) for w in self.words)


@dataclass(frozen=True, eq=False)
class Poset:
    """A finite partial order given as a boolean leq matrix."""

    leq: np.ndarray
    least: int | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        arr = _frozen_array(self.leq, bool)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise UsageError(f"leq must be a square matrix, got shape {arr.shape}")
        n = arr.shape[0]
        if not arr.diagonal().all():
            raise UsageError("relation is not reflexive")
        both = arr & arr.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = np.unravel_index(int(both.argmax()), both.shape)
            raise UsageError(f"relation is not antisymmetric: {i} <= {j} and {j} <= {i}")
        reach = (arr.astype(np.int64) @ arr.astype(np.int64)) > 0
        if (reach & ~arr).any():
            i, j = np.unravel_index(int((reach & ~arr).argmax()), arr.shape)
            raise UsageError(f"relation is not transitive at ({i}, {j})")
        if self.least is not None:
            if not (0 <= self.least < n):
                raise UsageError(f"least index {self.least} out of range")
            if not arr[self.least].all():
                raise UsageError(f"element {self.least} is not below every element")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != n or any(not s for s in labels) or len(set(labels)) != n:
                raise UsageError("labels must be n distinct non-empty strings")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "leq", arr)

    @property
    def n(self) -> int:
        return self.leq.shape[0]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return (
            self.least == other.least
            and self.labels == other.labels
            and np.array_equal(self.leq, other.leq)
        )


@dataclass(frozen=True)
class Filter:
    """A deductive system of a Hilbert-style dot table, stored as a frozenset
    of element indices."""

    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(i) for i in self.members))

    @property
    def bitmask(self) -> int:
        return sum(1 << i for i in self.members)

    def sort_key(self) -> tuple[int, int]:
        return (len(self.members), self.bitmask)

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class ClassificationReport:
    """Semisimple/local classification of a Hilbert-style algebra.

    `degenerate` marks the one-element algebra, which has no proper filter;
    its semisimple/local verdicts are reported as not applicable (False here,
    rendered as n/a by the CLI).
    """

    all_filter_count: int
    maximal_filters: tuple[Filter, ...]
    radical: frozenset[int]
    is_semisimple: bool
    is_local: bool
    degenerate: bool


@dataclass(frozen=True, eq=False)
class ExtendedMatrix:
    """A square 0/1 matrix extending a code matrix: identity column prefix,
    identity tail rows, and an optional prepended all-ones row."""

    rows: tuple[Codeword, ...]
    prepended_theta: bool
    source_dims: tuple[int, int]
    sort_permutation: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        p = len(rows)
        if p < 1 or any(w.length != p for w in rows):
            raise UsageError("extended matrix must be square")
        if len(set(rows)) != p:
            raise UsageError("extended matrix rows must be distinct")
        arr = np.array([w.bits for w in rows], dtype=np.uint8)
        if np.tril(arr, -1).any():
            raise UsageError("extended matrix must be upper triangular")
        if not arr.diagonal().all():
            raise UsageError("extended matrix must have unit diagonal")
        n, m = self.source_dims
        expected = n + m + (1 if self.prepended_theta else 0)
        if p != expected:
            raise UsageError(f"extended matrix dimension {p} does not match source dims {self.source_dims}")
        if self.prepended_theta:
            if not all(arr[0] == 1):
                raise UsageError("prepended first row must be all ones")
            if arr[1:, 0].any():
                raise UsageError("prepended first column must be zero below the first row")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "sort_permutation", tuple(self.sort_permutation))

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([w.bits for w in self.rows], dtype=np.uint8)

    def as_code(self) -> BlockCode:
        return BlockCode(self.rows)


@dataclass(frozen=True, eq=False)
class Embedding:
    """A code together with the algebra built on top of it.

    `origins[i]` tags element i as "theta", "code_row:<source index>" or
    "tail_row:<tail index>".  `code_row_elements` lists the elements carrying
    the lex-sorted source codewords, in sorted order; `tail_elements` lists
    the identity tail rows (empty in direct mode, where the codewords
    themselves are the carrier and `matrix` is None).
    """

    source: BlockCode
    matrix: ExtendedMatrix | None
    algebra: OpTable
    origins: tuple[str, ...]
    code_row_elements: tuple[int, ...]
    tail_elements: tuple[int, ...]
    sort_permutation: tuple[int, ...]

    def __post_init__(self):
        if len(self.origins) != self.algebra.n:
            raise UsageError("origins must tag every element")
        if len(self.code_row_elements) != self.source.size:
            raise UsageError("one carrier element per source codeword expected")
        object.__setattr__(self, "origins", tuple(self.origins))
        object.__setattr__(self, "code_row_elements", tuple(self.code_row_elements))
        object.__setattr__(self, "tail_elements", tuple(self.tail_elements))
        object.__setattr__(self, "sort_permutation", tuple(self.sort_permutation))


@dataclass(frozen=True)
class CutSpec:
    """Which elements become codewords (rows) and which become bit positions
    (columns) when reading a code back out of an algebra."""

    row_elements: tuple[int, ...]
    col_elements: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(i) for i in self.row_elements)
        cols = tuple(int(i) for i in self.col_elements)
        if not rows or not cols:
            raise UsageError("cut spec needs at least one row and one column element")
        object.__setattr__(self, "row_elements", rows)
        object.__setattr__(self, "col_elements", cols)

    def validate_against(self, n: int) -> None:
        for i in self.row_elements + self.col_elements:
            if not (0 <= i < n):
                raise UsageError(f"cut spec element {i} out of range [0, {n})")


@dataclass(frozen=True)
class CutResult:
    """Raw cut rows plus the deduplicated code packaged from them.

    `collisions` records (kept_row, dropped_row) pairs whose cut words were
    identical; `code` keeps first occurrences in row order.
    """

    words: tuple[Codeword, ...]
    code: BlockCode
    collisions: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class RoundtripReport:
    ok: bool
    expected: BlockCode
    recovered: tuple[Codeword, ...]
    first_mismatch: int | None


@dataclass(frozen=True)
class CensusReport:
    """Isomorphism census over the all-ones-first upper-triangular matrix
    family, compared against the 2^((n-1)(n-2)/2) matrix-count bound."""

    n: int
    free_bits: int
    total_matrices: int
    evaluated: int
    mode: str
    class_count: int
    class_sizes: tuple[int, ...]
    class_representatives: tuple[tuple[str, ...], ...]
    bound: int
    bound_met: bool

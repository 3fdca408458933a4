"""Recovering codes from algebras via cut rows, the semisimple/local code
families, and the exhaustive isomorphism census with its matrix-count bound."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import _kernels
from .algebra import verify_axioms
from .embedding import embed_code
from .errors import UsageError
from .model import (
    STAR,
    BlockCode,
    CensusReport,
    Codeword,
    CutResult,
    CutSpec,
    OpTable,
    RoundtripReport,
)
from .posets import lex_sort_desc

CENSUS_EXHAUSTIVE_MAX_N = 7
CENSUS_SAMPLE_MAX_N = 10
_BATCH = 4096


def cut_code(alg: OpTable, spec: CutSpec) -> CutResult:
    """One codeword per row element: the bit at column element x is 1 exactly
    when row * x is theta.  Duplicate words are kept in the raw list and
    deduplicated (first occurrence wins) when packaging the block code."""
    if alg.kind != STAR:
        raise UsageError("cut rows are read off a star table")
    rep = verify_axioms(alg, "bck")
    if not rep.passed:
        axiom, witness = rep.violations[0]
        raise UsageError(f"table is not a BCK-algebra (axiom {axiom} fails at {witness})")
    spec.validate_against(alg.n)
    t, theta = alg.table, alg.theta
    words = tuple(
        Codeword(tuple(1 if t[r, x] == theta else 0 for x in spec.col_elements))
        for r in spec.row_elements
    )
    seen: dict[Codeword, int] = {}
    kept = []
    collisions = []
    for pos, w in enumerate(words):
        if w in seen:
            collisions.append((seen[w], pos))
        else:
            seen[w] = pos
            kept.append(w)
    return CutResult(words=words, code=BlockCode(tuple(kept)), collisions=tuple(collisions))


def roundtrip_check(c: BlockCode) -> RoundtripReport:
    """Embed the code, cut it back out over (code rows x tail elements) and
    compare with the lex-sorted input word for word."""
    emb = embed_code(c)
    result = cut_code(
        emb.algebra,
        CutSpec(row_elements=emb.code_row_elements, col_elements=emb.tail_elements),
    )
    expected = lex_sort_desc(c)
    recovered = result.words
    mismatch = None
    for i, (got, want) in enumerate(zip(recovered, expected.words)):
        if got != want:
            mismatch = i
            break
    ok = mismatch is None and len(recovered) == expected.size
    return RoundtripReport(ok=ok, expected=expected, recovered=recovered, first_mismatch=mismatch)


def semisimple_family(n: int) -> BlockCode:
    """n words of length n: the all-ones word followed by the unit vectors
    with the 1 in positions 2..n.  Lex-descending by construction."""
    if n < 2:
        raise UsageError("the semisimple family needs n >= 2")
    words = [Codeword.ones(n)]
    for i in range(1, n):
        bits = [0] * n
        bits[i] = 1
        words.append(Codeword(tuple(bits)))
    return BlockCode(tuple(words))


def local_family_free_bit_count(n: int) -> int:
    return (n - 2) * (n - 3) // 2 if n >= 3 else 0


def local_family(n: int, free_bits="") -> BlockCode:
    """n words of length n forming an upper-triangular unit-diagonal matrix
    with all-ones first row and all-ones last column; the cells (i, j) with
    2 <= i < j <= n-1 (1-based) come from `free_bits` in row-major order."""
    if n < 2:
        raise UsageError("the local family needs n >= 2")
    bits = [int(b) for b in free_bits]
    if any(b not in (0, 1) for b in bits):
        raise UsageError("free bits must be 0 or 1")
    positions = [(i, j) for i in range(1, n - 2) for j in range(i + 1, n - 1)]
    if len(bits) != len(positions):
        raise UsageError(
            f"the local family with n={n} needs exactly {len(positions)} free bits, got {len(bits)}"
        )
    mat = np.eye(n, dtype=np.uint8)
    mat[0, :] = 1
    mat[:, n - 1] = 1
    for (i, j), b in zip(positions, bits):
        mat[i, j] = b
    words = [Codeword(tuple(int(v) for v in row)) for row in mat]
    for a, b in zip(words, words[1:]):
        if not a.bits > b.bits:
            raise UsageError("free-bit assignment breaks the lexicographic ordering hypothesis")
    return BlockCode(tuple(words))


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

def _census_positions(n: int) -> list[tuple[int, int]]:
    # above-diagonal cells of rows 2..n-1 (1-based), row-major
    return [(i, j) for i in range(1, n - 1) for j in range(i + 1, n)]


def _bits_from_indices(ks: np.ndarray, width: int) -> np.ndarray:
    shifts = np.arange(width - 1, -1, -1, dtype=np.uint64)
    return ((ks[:, None] >> shifts[None, :]) & 1).astype(np.uint8)


def _matrices_from_bits(n: int, bits: np.ndarray) -> np.ndarray:
    positions = _census_positions(n)
    count = bits.shape[0]
    mats = np.zeros((count, n, n), dtype=np.uint8)
    idx = np.arange(n)
    mats[:, idx, idx] = 1
    mats[:, 0, :] = 1
    for p, (i, j) in enumerate(positions):
        mats[:, i, j] = bits[:, p]
    return mats


def _census_batch(n: int, bits: np.ndarray, offset: int) -> dict[bytes, list[int]]:
    """Map canonical table key -> [matrix count, minimal global position]."""
    mats = _matrices_from_bits(n, bits)
    leq = (mats[:, None, :, :] <= mats[:, :, None, :]).all(axis=3)
    idx = np.arange(n, dtype=np.int64)
    uniq, inverse = np.unique(leq.reshape(len(mats), n * n), axis=0, return_inverse=True)
    inverse = inverse.ravel()
    counts = np.bincount(inverse, minlength=len(uniq))
    first_pos = np.full(len(uniq), np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(first_pos, inverse, np.arange(offset, offset + len(mats), dtype=np.int64))
    perms, invs = _kernels.theta_fixing_perms(n)
    classes: dict[bytes, list[int]] = {}
    for u in range(len(uniq)):
        table = np.where(uniq[u].reshape(n, n), np.int64(0), idx[:, None])
        key = _kernels.canonical_table(table, perms, invs).tobytes()
        entry = classes.get(key)
        if entry is None:
            classes[key] = [int(counts[u]), int(first_pos[u])]
        else:
            entry[0] += int(counts[u])
            entry[1] = min(entry[1], int(first_pos[u]))
    return classes


def _merge(into: dict[bytes, list[int]], other: dict[bytes, list[int]]) -> None:
    for key, (count, pos) in other.items():
        entry = into.get(key)
        if entry is None:
            into[key] = [count, pos]
        else:
            entry[0] += count
            entry[1] = min(entry[1], pos)


def _census_worker(payload) -> dict[bytes, list[int]]:
    n, start, stop, width, sample_bits = payload
    classes: dict[bytes, list[int]] = {}
    pos = start
    while pos < stop:
        hi = min(pos + _BATCH, stop)
        if sample_bits is None:
            bits = _bits_from_indices(np.arange(pos, hi, dtype=np.uint64), width)
        else:
            bits = sample_bits[pos - start : hi - start]
        _merge(classes, _census_batch(n, bits, pos))
        pos = hi
    return classes


def census(n: int, sample_count: int | None = None, seed: int = 0, jobs: int = 1) -> CensusReport:
    """Partition the all-ones-first upper-triangular matrix family on n
    elements into isomorphism classes of the induced algebras.

    Exhaustive when `sample_count` is None (n <= 7), otherwise a seeded
    uniform sample of free-bit assignments.  Classes are keyed by the
    lexicographically minimal theta-fixing relabeling of the table, so the
    report is identical for any worker count.
    """
    if n < 2:
        raise UsageError("census needs n >= 2")
    free = (n - 1) * (n - 2) // 2
    total = 1 << free
    if sample_count is None:
        if n > CENSUS_EXHAUSTIVE_MAX_N:
            raise UsageError(
                f"exhaustive census is limited to n <= {CENSUS_EXHAUSTIVE_MAX_N} "
                f"({total} matrices at n={n}); use sampling instead"
            )
        evaluated = total
        sample_bits = None
        mode = "exhaustive"
    else:
        if n > CENSUS_SAMPLE_MAX_N:
            raise UsageError(f"census is limited to n <= {CENSUS_SAMPLE_MAX_N}")
        if sample_count < 1:
            raise UsageError("sample count must be positive")
        rng = np.random.default_rng(seed)
        sample_bits = rng.integers(0, 2, size=(sample_count, free), dtype=np.uint8)
        evaluated = sample_count
        mode = "sample"
    if jobs < 1:
        raise UsageError("jobs must be positive")

    classes: dict[bytes, list[int]] = {}
    if jobs == 1:
        _merge(classes, _census_worker((n, 0, evaluated, free, sample_bits)))
    else:
        _kernels.warmup()  # compile before forking so children inherit the JIT state
        bounds = np.linspace(0, evaluated, jobs + 1, dtype=np.int64)
        payloads = []
        for k in range(jobs):
            start, stop = int(bounds[k]), int(bounds[k + 1])
            chunk = None if sample_bits is None else sample_bits[start:stop]
            payloads.append((n, start, stop, free, chunk))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for result in pool.map(_census_worker, payloads):
                _merge(classes, result)

    keys = sorted(classes)
    sizes = tuple(classes[key][0] for key in keys)
    reps = []
    for key in keys:
        pos = classes[key][1]
        if sample_bits is None:
            bits = _bits_from_indices(np.array([pos], dtype=np.uint64), free)
        else:
            bits = sample_bits[pos : pos + 1]
        mat = _matrices_from_bits(n, bits)[0]
        reps.append(tuple("".join(str(int(v)) for v in row) for row in mat))
    return CensusReport(
        n=n,
        free_bits=free,
        total_matrices=total,
        evaluated=evaluated,
        mode=mode,
        class_count=len(keys),
        class_sizes=sizes,
        class_representatives=tuple(reps),
        bound=total,
        bound_met=len(keys) >= total,
    )

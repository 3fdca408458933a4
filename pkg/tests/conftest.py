import sys
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bckcodes import STAR, BlockCode, OpTable

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def star_table(rows, labels=None) -> OpTable:
    return OpTable(table=np.array(rows, dtype=np.int64), kind=STAR, labels=labels)


def brute_filters(dot_table: np.ndarray, theta: int = 0) -> list[frozenset]:
    """Independent oracle: scan every theta-containing subset for deductive
    closure."""
    n = dot_table.shape[0]
    rest = [i for i in range(n) if i != theta]
    out = []
    for r in range(n):
        for sub in combinations(rest, r):
            members = frozenset((theta,) + sub)
            if _closed(dot_table, members):
                out.append(members)
    return out


def _closed(dot_table: np.ndarray, members: frozenset) -> bool:
    n = dot_table.shape[0]
    for x in members:
        for y in range(n):
            if y not in members and int(dot_table[x][y]) in members:
                return False
    return True


def brute_maximal(dot_table: np.ndarray, theta: int = 0) -> list[frozenset]:
    n = dot_table.shape[0]
    carrier = frozenset(range(n))
    proper = [f for f in brute_filters(dot_table, theta) if f != carrier]
    return [f for f in proper if not any(f < g for g in proper)]


def labeled_posets(k: int) -> np.ndarray:
    """Every reflexive-antisymmetric-transitive relation on k elements,
    found by scanning all off-diagonal bit masks."""
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    width = len(pairs)
    eye = np.eye(k, dtype=bool)
    kept = []
    for start in range(0, 2**width, 1 << 18):
        masks = np.arange(start, min(start + (1 << 18), 2**width), dtype=np.uint64)
        bits = ((masks[:, None] >> np.arange(width, dtype=np.uint64)) & 1).astype(bool)
        rel = np.zeros((len(masks), k, k), dtype=bool)
        for b, (i, j) in enumerate(pairs):
            rel[:, i, j] = bits[:, b]
        rel |= eye
        antisym = ~((rel & rel.transpose(0, 2, 1) & ~eye).any(axis=(1, 2)))
        reach = np.matmul(rel.astype(np.int8), rel.astype(np.int8)) > 0
        transitive = ~((reach & ~rel).any(axis=(1, 2)))
        kept.append(rel[antisym & transitive])
    return np.concatenate(kept)


def count_posets_up_to_iso(k: int) -> int:
    """Isomorphism classes of posets on k elements: canonical form is the
    minimal serialization over all k! relabelings."""
    from itertools import permutations

    perms = [np.array(p) for p in permutations(range(k))]
    canons = set()
    for rel in labeled_posets(k):
        canons.add(min(rel[np.ix_(p, p)].tobytes() for p in perms))
    return len(canons)


def random_codes(count: int, seed: int, max_words: int = 8, max_length: int = 8):
    """Seeded duplicate-free random codes with n, m <= the given caps."""
    rng = np.random.default_rng(seed)
    codes = []
    while len(codes) < count:
        m = int(rng.integers(1, max_length + 1))
        n = int(rng.integers(1, min(2**m, max_words) + 1))
        words = set()
        attempts = 0
        while len(words) < n and attempts < 200:
            bits = rng.integers(0, 2, size=m)
            words.add("".join(str(int(b)) for b in bits))
            attempts += 1
        if len(words) == n:
            codes.append(BlockCode.from_strings(sorted(words, reverse=True)))
    return codes

"""Extending a code matrix to an upper-triangular square matrix and building
the containing algebra; the direct code-as-carrier pathway; the tail-set
filter check."""
from __future__ import annotations

import string
from dataclasses import replace

import numpy as np

from .algebra import dualize
from .errors import UsageError
from .filters import is_filter
from .model import BlockCode, Codeword, Embedding, ExtendedMatrix, Filter
from .posets import code_poset, lex_sort_desc_with_perm, poset_to_bck


def extend_matrix(c: BlockCode) -> ExtendedMatrix:
    """Square upper-triangular extension of a code matrix.

    The code is lex-sorted descending (permutation recorded), an identity
    prefix is attached on the left so sorted row i carries unit vector e_i,
    identity tail rows are appended, and an all-ones row plus matching first
    column are prepended when the first row is not already all ones.
    """
    sorted_code, perm = lex_sort_desc_with_perm(c)
    n, m = sorted_code.size, sorted_code.word_length
    block = np.zeros((n + m, n + m), dtype=np.uint8)
    block[:n, :n] = np.eye(n, dtype=np.uint8)
    block[:n, n:] = sorted_code.matrix
    block[n:, n:] = np.eye(m, dtype=np.uint8)
    prepend = not bool(block[0].all())
    if prepend:
        p = n + m + 1
        full = np.zeros((p, p), dtype=np.uint8)
        full[0, :] = 1
        full[1:, 1:] = block
        block = full
    rows = tuple(Codeword(tuple(int(b) for b in row)) for row in block)
    return ExtendedMatrix(
        rows=rows,
        prepended_theta=prepend,
        source_dims=(n, m),
        sort_permutation=perm,
    )


def _embedding_labels(size: int) -> tuple[str, ...]:
    return ("θ",) + tuple(f"w{i + 1}" for i in range(1, size))


def _direct_labels(size: int) -> tuple[str, ...]:
    if size - 1 <= len(string.ascii_lowercase):
        return ("θ",) + tuple(string.ascii_lowercase[: size - 1])
    return ("θ",) + tuple(f"x{i + 1}" for i in range(1, size))


def embed_code(c: BlockCode) -> Embedding:
    """Compose matrix extension, domination order and the order-to-table
    constructor.  The resulting star table always satisfies the BCK axioms
    plus positive implicativity, and its dual the Hilbert axioms."""
    matrix = extend_matrix(c)
    n, m = matrix.source_dims
    poset = code_poset(matrix.as_code(), adjoin_theta=False)
    algebra = poset_to_bck(poset)
    size = matrix.dimension
    algebra = replace(algebra, labels=_embedding_labels(size))
    offset = 1 if matrix.prepended_theta else 0
    perm = matrix.sort_permutation
    origins = []
    for i in range(size):
        if i == 0 and matrix.prepended_theta:
            origins.append("theta")
        elif i - offset < n:
            origins.append(f"code_row:{perm[i - offset]}")
        else:
            origins.append(f"tail_row:{i - offset - n}")
    return Embedding(
        source=c,
        matrix=matrix,
        algebra=algebra,
        origins=tuple(origins),
        code_row_elements=tuple(range(offset, offset + n)),
        tail_elements=tuple(range(offset + n, offset + n + m)),
        sort_permutation=perm,
    )


def direct_algebra(c: BlockCode) -> Embedding:
    """Use the codewords themselves as the carrier: sort, adjoin the
    all-ones word as theta when missing, and read the table off the
    domination order.  No tail elements."""
    sorted_code, perm = lex_sort_desc_with_perm(c)
    ones = Codeword.ones(c.word_length)
    adjoined = ones not in sorted_code.words
    poset = code_poset(sorted_code, adjoin_theta=True)
    algebra = poset_to_bck(poset)
    size = algebra.n
    algebra = replace(algebra, labels=_direct_labels(size))
    origins = ["theta"]
    if adjoined:
        origins += [f"code_row:{perm[k]}" for k in range(sorted_code.size)]
        code_row_elements = tuple(range(1, size))
    else:
        origins += [f"code_row:{perm[k]}" for k in range(1, sorted_code.size)]
        code_row_elements = tuple(range(size))
    return Embedding(
        source=c,
        matrix=None,
        algebra=algebra,
        origins=tuple(origins),
        code_row_elements=code_row_elements,
        tail_elements=(),
        sort_permutation=perm,
    )


def tail_set_check(e: Embedding) -> tuple[Filter, bool, tuple[int, int] | None]:
    """Check (rather than assert) whether theta plus the tail elements form
    a filter in the dual algebra; returns the set, the verdict and the first
    violating pair when the verdict is false."""
    if not e.tail_elements:
        raise UsageError("embedding has no tail elements (direct-mode input)")
    members = frozenset({e.algebra.theta}) | frozenset(e.tail_elements)
    ok, witness = is_filter(dualize(e.algebra), members)
    return Filter(members=members), ok, witness

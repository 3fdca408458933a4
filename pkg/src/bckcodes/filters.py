"""Filters (deductive systems) of Hilbert-style dot tables: membership,
generation, enumeration and the semisimple/local classification.

Member sets are manipulated as int bitmasks internally; the deductive
closure runs a worklist so that growing a known filter by one element costs
O(n) amortized rather than a full fixpoint restart.
"""
from __future__ import annotations

from .algebra import dualize, verify_axioms
from .errors import UsageError
from .model import DOT, STAR, ClassificationReport, Filter, OpTable

# enumeration is exponential in the worst case; warn past this carrier size
ENUMERATION_WARN_SIZE = 16


def _require_hilbert(h: OpTable) -> None:
    if h.kind != DOT:
        raise UsageError("filters are defined on dot tables; dualize the star table first")
    rep = verify_axioms(h, "hilbert")
    if not rep.passed:
        axiom, witness = rep.violations[0]
        raise UsageError(f"table is not a Hilbert algebra (axiom {axiom} fails at {witness})")


def _pytable(h: OpTable) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in h.table)


def _by_value(rows) -> list[list[tuple[int, int]]]:
    """by_value[v] lists the cells (x, y) with rows[x][y] == v."""
    n = len(rows)
    out = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            out[rows[x][y]].append((x, y))
    return out


def _close(rows, by_value, n: int, base: int, added) -> int:
    """Deductive closure of base | added, given that base is already closed.

    Worklist rule: x in M and rows[x][y] in M force y into M.  A newly
    added element z fires both as the premise row (scan rows[z]) and as the
    premise value (scan the cells equal to z).
    """
    members = base
    queue = []
    for e in added:
        if not members >> e & 1:
            members |= 1 << e
            queue.append(e)
    while queue:
        z = queue.pop()
        row = rows[z]
        for y in range(n):
            if not members >> y & 1 and members >> row[y] & 1:
                members |= 1 << y
                queue.append(y)
        for x, y in by_value[z]:
            if members >> x & 1 and not members >> y & 1:
                members |= 1 << y
                queue.append(y)
    return members


def _mask_to_set(mask: int, n: int) -> frozenset[int]:
    return frozenset(i for i in range(n) if mask >> i & 1)


def _check_members(h: OpTable, s) -> frozenset[int]:
    members = frozenset(int(i) for i in s)
    for i in members:
        if not (0 <= i < h.n):
            raise UsageError(f"element {i} out of range [0, {h.n})")
    return members


def is_filter(h: OpTable, s) -> tuple[bool, tuple[int, int] | None]:
    """Whether s contains theta and is deductively closed; on failure the
    witness is the first violating pair in index order."""
    _require_hilbert(h)
    members = _check_members(h, s)
    if h.theta not in members:
        return False, None
    rows = _pytable(h)
    for x in sorted(members):
        row = rows[x]
        for y in range(h.n):
            if y not in members and row[y] in members:
                return False, (x, y)
    return True, None


def generated_filter(h: OpTable, seed) -> Filter:
    """Least filter containing the seed: deductive closure of
    {theta} union seed."""
    _require_hilbert(h)
    seed = _check_members(h, seed)
    rows = _pytable(h)
    mask = _close(rows, _by_value(rows), h.n, 0, seed | {h.theta})
    return Filter(members=_mask_to_set(mask, h.n))


def _enumerate_masks(h: OpTable) -> list[int]:
    rows = _pytable(h)
    by_value = _by_value(rows)
    n = h.n
    base = _close(rows, by_value, n, 0, (h.theta,))
    found = {base}
    frontier = [base]
    while frontier:
        nxt = []
        for mask in frontier:
            for e in range(n):
                if mask >> e & 1:
                    continue
                grown = _close(rows, by_value, n, mask, (e,))
                if grown not in found:
                    found.add(grown)
                    nxt.append(grown)
        frontier = nxt
    return sorted(found, key=lambda m: (bin(m).count("1"), m))


def all_filters(h: OpTable) -> list[Filter]:
    """Every filter, by breadth-first closure expansion from {theta}.

    Output order: cardinality, then bitmask value.
    """
    _require_hilbert(h)
    if h.n > ENUMERATION_WARN_SIZE:
        import sys

        print(
            f"warning: enumerating filters of a {h.n}-element algebra may be slow",
            file=sys.stderr,
        )
    return [Filter(members=_mask_to_set(m, h.n)) for m in _enumerate_masks(h)]


def _maximal_masks(masks: list[int], carrier: int) -> list[int]:
    proper = [m for m in masks if m != carrier]
    return [m for m in proper if not any(m != g and m & g == m for g in proper)]


def maximal_filters(h: OpTable) -> list[Filter]:
    """Proper filters maximal under inclusion among proper filters; empty
    for the one-element algebra."""
    _require_hilbert(h)
    if h.n == 1:
        return []
    carrier = (1 << h.n) - 1
    return [
        Filter(members=_mask_to_set(m, h.n))
        for m in _maximal_masks(_enumerate_masks(h), carrier)
    ]


def classify(h: OpTable, auto_dualize: bool = True) -> ClassificationReport:
    """Semisimple/local verdicts per the maximal-filter structure.

    Star input is dualized first when `auto_dualize` is set; the dual must
    then pass the Hilbert axioms.  The one-element algebra is reported
    degenerate with both verdicts not applicable.
    """
    if h.kind == STAR:
        if not auto_dualize:
            raise UsageError("got a star table with auto_dualize disabled")
        h = dualize(h)
    _require_hilbert(h)
    masks = _enumerate_masks(h)
    if h.n == 1:
        return ClassificationReport(
            all_filter_count=len(masks),
            maximal_filters=(),
            radical=frozenset({h.theta}),
            is_semisimple=False,
            is_local=False,
            degenerate=True,
        )
    carrier = (1 << h.n) - 1
    maximal = _maximal_masks(masks, carrier)
    radical_mask = carrier
    for m in maximal:
        radical_mask &= m
    radical = _mask_to_set(radical_mask, h.n)
    return ClassificationReport(
        all_filter_count=len(masks),
        maximal_filters=tuple(Filter(members=_mask_to_set(m, h.n)) for m in maximal),
        radical=radical,
        is_semisimple=radical == frozenset({h.theta}),
        is_local=len(maximal) == 1,
        degenerate=False,
    )

"""Two-string weighted Levenshtein alignment.

The DP minimizes total cost and, among minimal-cost alignments, maximizes
the column count (the normalization denominator is the length of the
longest optimal alignment). Traceback is deterministic: when costs tie,
deletion is preferred over insertion over substitution, applied
right-to-left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .costs import CostModel
from .errors import CapExceeded, ZeroLength
from .phonetics import Segment, Transcription


@dataclass(frozen=True)
class AlignmentColumn:
    left: Segment | None
    right: Segment | None
    op: str  # "match" | "sub" | "ins" | "del"
    cost: float


@dataclass(frozen=True)
class PairAlignment:
    columns: tuple[AlignmentColumn, ...]
    total_cost: float

    @property
    def length(self) -> int:
        return len(self.columns)


def _segments(x) -> tuple[Segment, ...]:
    return x.segments if isinstance(x, Transcription) else tuple(x)


def align_pair(a, b, cm: CostModel) -> PairAlignment:
    """Minimal-cost alignment of maximal length among the optima."""
    sa, sb = _segments(a), _segments(b)
    n, m = len(sa), len(sb)

    # cost[i][j]: minimal cost aligning sa[:i] with sb[:j];
    # alen[i][j]: maximal column count among minimal-cost alignments.
    cost = [[math.inf] * (m + 1) for _ in range(n + 1)]
    alen = [[0] * (m + 1) for _ in range(n + 1)]
    cost[0][0] = 0.0
    for i in range(1, n + 1):
        cost[i][0] = cost[i - 1][0] + cm.indel(sa[i - 1])
        alen[i][0] = i
    for j in range(1, m + 1):
        cost[0][j] = cost[0][j - 1] + cm.indel(sb[j - 1])
        alen[0][j] = j
    for i in range(1, n + 1):
        ca = cost[i - 1]
        cb = cost[i]
        for j in range(1, m + 1):
            best = ca[j] + cm.indel(sa[i - 1])
            blen = alen[i - 1][j] + 1
            c = cb[j - 1] + cm.indel(sb[j - 1])
            if c < best:
                best, blen = c, alen[i][j - 1] + 1
            elif c == best:
                blen = max(blen, alen[i][j - 1] + 1)
            c = ca[j - 1] + cm.subst(sa[i - 1], sb[j - 1])
            if c < best:
                best, blen = c, alen[i - 1][j - 1] + 1
            elif c == best:
                blen = max(blen, alen[i - 1][j - 1] + 1)
            cb[j] = best
            alen[i][j] = blen

    # Traceback, right-to-left; tie preference: del > ins > sub.
    columns = []
    i, j = n, m
    while i > 0 or j > 0:
        here_cost, here_len = cost[i][j], alen[i][j]
        if i > 0:
            c = cm.indel(sa[i - 1])
            if cost[i - 1][j] + c == here_cost and alen[i - 1][j] + 1 == here_len:
                columns.append(AlignmentColumn(sa[i - 1], None, "del", c))
                i -= 1
                continue
        if j > 0:
            c = cm.indel(sb[j - 1])
            if cost[i][j - 1] + c == here_cost and alen[i][j - 1] + 1 == here_len:
                columns.append(AlignmentColumn(None, sb[j - 1], "ins", c))
                j -= 1
                continue
        c = cm.subst(sa[i - 1], sb[j - 1])
        assert cost[i - 1][j - 1] + c == here_cost
        op = "match" if sa[i - 1].symbol == sb[j - 1].symbol else "sub"
        columns.append(AlignmentColumn(sa[i - 1], sb[j - 1], op, c))
        i -= 1
        j -= 1
    columns.reverse()
    return PairAlignment(tuple(columns), cost[n][m])


def normalized_distance(al: PairAlignment) -> float:
    """Total cost divided by the alignment length (longest optimal)."""
    if al.length == 0:
        raise ZeroLength("cannot normalize an empty alignment")
    return al.total_cost / al.length


def enumerate_optimal(a, b, cm: CostModel, cap: int = 100_000) -> list[PairAlignment]:
    """All minimal-cost alignments, by exhaustive enumeration.

    Test oracle for the longest-optimal-alignment rule; exponential, only
    usable on short strings. Raises CapExceeded if more than `cap` optimal
    alignments exist.
    """
    sa, sb = _segments(a), _segments(b)

    best_cost = math.inf
    optima: list[tuple[AlignmentColumn, ...]] = []

    def walk(i, j, acc_cost, acc_cols):
        nonlocal best_cost, optima
        if acc_cost > best_cost:
            return
        if i == len(sa) and j == len(sb):
            if acc_cost < best_cost:
                best_cost = acc_cost
                optima = []
            if acc_cost == best_cost:
                optima.append(tuple(acc_cols))
                if len(optima) > cap:
                    raise CapExceeded(f"more than {cap} optimal alignments")
            return
        if i < len(sa):
            c = cm.indel(sa[i])
            acc_cols.append(AlignmentColumn(sa[i], None, "del", c))
            walk(i + 1, j, acc_cost + c, acc_cols)
            acc_cols.pop()
        if j < len(sb):
            c = cm.indel(sb[j])
            acc_cols.append(AlignmentColumn(None, sb[j], "ins", c))
            walk(i, j + 1, acc_cost + c, acc_cols)
            acc_cols.pop()
        if i < len(sa) and j < len(sb):
            c = cm.subst(sa[i], sb[j])
            if c < math.inf:
                op = "match" if sa[i].symbol == sb[j].symbol else "sub"
                acc_cols.append(AlignmentColumn(sa[i], sb[j], op, c))
                walk(i + 1, j + 1, acc_cost + c, acc_cols)
                acc_cols.pop()

    walk(0, 0, 0.0, [])
    return [PairAlignment(cols, best_cost) for cols in optima]

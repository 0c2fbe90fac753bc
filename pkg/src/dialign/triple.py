"""Three-string alignment of (older, newer, standard) transcriptions.

The cubic-lattice DP uses seven column operations: advance any one
string, any two, or all three. Column cost is the sum of the three
pairwise distances, with gap-gap pairs costing 0 and segment-gap pairs
priced at the segment's gap distance. Per-column direction of change is
distance(newer, standard) - distance(older, standard): positive means
divergence from the standard, negative convergence towards it.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .costs import CostModel
from .errors import RoleMismatch
from .pairwise import align_pair, normalized_distance
from .phonetics import Segment, Source, Transcription

log = logging.getLogger(__name__)

# Moves as (dx, dy, dz) in frozen traceback preference order: single-string
# advances first (x, then y, then z), then pairs, then all three.
MOVES = (
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
    (1, 1, 1),
)


@dataclass(frozen=True)
class TripleColumn:
    x: Segment | None
    y: Segment | None
    z: Segment | None
    cost: float

    @property
    def presence(self) -> tuple[bool, bool, bool]:
        return (self.x is not None, self.y is not None, self.z is not None)

    @property
    def stable(self) -> bool:
        """All three segments present and identical."""
        return (
            self.x is not None
            and self.y is not None
            and self.z is not None
            and self.x.symbol == self.y.symbol == self.z.symbol
        )


@dataclass(frozen=True)
class TripleAlignment:
    columns: tuple[TripleColumn, ...]
    total_cost: float

    @property
    def length(self) -> int:
        return len(self.columns)


@dataclass(frozen=True)
class ChangeRecord:
    location: str
    word: str
    conv: float
    div: float
    alignment_length: int


def _pair_cost(cm: CostModel, u: Segment | None, v: Segment | None) -> float:
    if u is None and v is None:
        return 0.0
    if u is None:
        return cm.indel(v)
    if v is None:
        return cm.indel(u)
    return cm.subst(u, v)


def column_cost(cm: CostModel, x, y, z) -> float:
    return _pair_cost(cm, x, y) + _pair_cost(cm, x, z) + _pair_cost(cm, y, z)


def _segments(s) -> tuple[Segment, ...]:
    return s.segments if isinstance(s, Transcription) else tuple(s)


def _check_roles(x, y, z):
    sources = tuple(
        s.source if isinstance(s, Transcription) else None for s in (x, y, z)
    )
    expected = (Source.OLDER, Source.NEWER, Source.STANDARD)
    for got, want in zip(sources, expected):
        if got is not None and got is not want:
            raise RoleMismatch(f"expected sources {expected}, got {sources}")


def align_triple(x, y, z, cm: CostModel) -> TripleAlignment:
    """Minimal-cost three-string alignment, longest among the optima.

    x must be the older variant, y the newer, z the standard; transcription
    sources are checked when present.
    """
    _check_roles(x, y, z)
    sx, sy, sz = _segments(x), _segments(y), _segments(z)
    nx, ny, nz = len(sx), len(sy), len(sz)

    inf = math.inf
    cost = [[[inf] * (nz + 1) for _ in range(ny + 1)] for _ in range(nx + 1)]
    alen = [[[0] * (nz + 1) for _ in range(ny + 1)] for _ in range(nx + 1)]
    cost[0][0][0] = 0.0

    for i in range(nx + 1):
        for j in range(ny + 1):
            row = cost[i][j]
            lrow = alen[i][j]
            for k in range(nz + 1):
                if i == j == k == 0:
                    continue
                best = inf
                blen = 0
                for dx, dy, dz in MOVES:
                    pi, pj, pk = i - dx, j - dy, k - dz
                    if pi < 0 or pj < 0 or pk < 0:
                        continue
                    prev = cost[pi][pj][pk]
                    if prev == inf:
                        continue
                    c = prev + column_cost(
                        cm,
                        sx[pi] if dx else None,
                        sy[pj] if dy else None,
                        sz[pk] if dz else None,
                    )
                    plen = alen[pi][pj][pk] + 1
                    if c < best or (c == best and plen > blen):
                        best, blen = c, plen
                row[k] = best
                lrow[k] = blen

    columns = []
    i, j, k = nx, ny, nz
    while i > 0 or j > 0 or k > 0:
        here_cost, here_len = cost[i][j][k], alen[i][j][k]
        for dx, dy, dz in MOVES:
            pi, pj, pk = i - dx, j - dy, k - dz
            if pi < 0 or pj < 0 or pk < 0:
                continue
            cx = sx[pi] if dx else None
            cy = sy[pj] if dy else None
            cz = sz[pk] if dz else None
            c = column_cost(cm, cx, cy, cz)
            if cost[pi][pj][pk] + c == here_cost and alen[pi][pj][pk] + 1 == here_len:
                columns.append(TripleColumn(cx, cy, cz, c))
                i, j, k = pi, pj, pk
                break
        else:  # pragma: no cover - DP guarantees a predecessor
            raise AssertionError("traceback found no consistent predecessor")
    columns.reverse()
    return TripleAlignment(tuple(columns), cost[nx][ny][nz])


def _distance(dist_table, u: Segment | None, v: Segment | None) -> float:
    if u is None and v is None:
        return 0.0
    a = u.symbol if u is not None else None
    b = v.symbol if v is not None else None
    d = dist_table.distance(a, b)
    if d == math.inf:
        log.warning("no finite distance for pair (%s, %s); using 1.0", a, b)
        return 1.0
    return d


def column_direction(col: TripleColumn, dist_table) -> float:
    """distance(newer, standard) - distance(older, standard) for one column."""
    return _distance(dist_table, col.y, col.z) - _distance(dist_table, col.x, col.z)


def decompose(al: TripleAlignment, dist_table) -> tuple[float, float]:
    """Convergence and divergence proportions of a triple alignment.

    Convergent column magnitudes and divergent column magnitudes are
    summed separately, each divided by the alignment length. Neutral and
    stable columns contribute to neither.
    """
    if al.length == 0:
        return 0.0, 0.0
    conv = div = 0.0
    for col in al.columns:
        d = column_direction(col, dist_table)
        if d < 0:
            conv -= d
        else:
            div += d
    return conv / al.length, div / al.length


def double_pairwise_delta(x, y, z, cm: CostModel) -> float:
    """Validation statistic: normalized 2D distance of (newer, standard)
    minus that of (older, standard)."""
    return normalized_distance(align_pair(y, z, cm)) - normalized_distance(
        align_pair(x, z, cm)
    )


def brute_force_min_cost(x, y, z, cm: CostModel) -> float:
    """Exhaustive minimum over all three-string alignments (test oracle)."""
    sx, sy, sz = _segments(x), _segments(y), _segments(z)
    cache: dict[tuple[int, int, int], float] = {}

    def rec(i, j, k) -> float:
        if i == len(sx) and j == len(sy) and k == len(sz):
            return 0.0
        key = (i, j, k)
        if key in cache:
            return cache[key]
        best = math.inf
        for dx, dy, dz in MOVES:
            ni, nj, nk = i + dx, j + dy, k + dz
            if ni > len(sx) or nj > len(sy) or nk > len(sz):
                continue
            c = column_cost(
                cm,
                sx[i] if dx else None,
                sy[j] if dy else None,
                sz[k] if dz else None,
            )
            best = min(best, c + rec(ni, nj, nk))
        cache[key] = best
        return best

    return rec(0, 0, 0)

"""Corpus-driven segment distances via iterative PMI estimation.

Same-word transcription pairs are aligned under the current cost model;
aligned symbol co-occurrences (with the gap as a first-class symbol) are
counted, smoothed, and turned into pointwise mutual information. PMI is
negated and min-max rescaled into [0,1], the diagonal is floored at 0,
and the procedure repeats until the table or the alignments stop
changing. Frequently co-occurring sounds thus get costs close to 0.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from pathlib import Path

from .costs import GAP, CostModel
from .errors import EmptyCorpus, ParseError
from .pairwise import align_pair
from .phonetics import Transcription

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PmiTable:
    """Symmetric segment-pair distances in [0,1], gap included."""

    dist: dict[tuple[str, str], float]
    iterations_run: int = 0
    converged: bool = False
    _warned: set = field(default_factory=set, repr=False, compare=False)

    def __post_init__(self):
        normalized = {
            (a, b) if a <= b else (b, a): v for (a, b), v in self.dist.items()
        }
        object.__setattr__(self, "dist", normalized)

    def distance(self, a: str | None, b: str | None) -> float:
        if a is None and b is None:
            return 0.0
        a = GAP if a is None else a
        b = GAP if b is None else b
        if a == b and a != GAP:
            return self.dist.get((a, a), 0.0)
        key = (a, b) if a <= b else (b, a)
        if key not in self.dist:
            if key not in self._warned:
                self._warned.add(key)
                log.warning("pair %s not in PMI table; defaulting to 1.0", key)
            return 1.0
        return self.dist[key]

    def to_tsv(self) -> str:
        lines = [
            f"{a}\t{b}\t{self.dist[(a, b)]:.12g}" for a, b in sorted(self.dist)
        ]
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_tsv(), encoding="utf-8")

    @classmethod
    def read(cls, path) -> "PmiTable":
        dist = {}
        for lineno, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), 1
        ):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ParseError(lineno, "expected symbol_a<TAB>symbol_b<TAB>distance")
            a, b, value = fields
            try:
                d = float(value)
            except ValueError:
                raise ParseError(lineno, f"bad distance {value!r}")
            key = (a, b) if a <= b else (b, a)
            dist[key] = d
        return cls(dist, iterations_run=0, converged=True)


@dataclass(frozen=True)
class InductionOptions:
    max_iter: int = 50
    tol: float = 1e-6
    smoothing: float = 0.5
    min_pairs: int = 50  # loud warning below this corpus size

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be > 0")
        if self.smoothing <= 0:
            raise ValueError("smoothing must be > 0")


class AlignmentCorpus:
    """Same-word transcription pairs feeding PMI induction."""

    def __init__(self, pairs):
        self.pairs = list(pairs)
        for a, b in self.pairs:
            if (
                isinstance(a, Transcription)
                and isinstance(b, Transcription)
                and a.word != b.word
            ):
                raise ValueError(f"pair words differ: {a.word!r} vs {b.word!r}")

    def __len__(self):
        return len(self.pairs)


def distances_from_counts(
    counts: dict[tuple[str, str], float], smoothing: float
) -> dict[tuple[str, str], float]:
    """PMI distances from co-occurrence counts (induction steps 3 and 4).

    Counts are over unordered symbol pairs; the pair universe is every
    unordered pair over the observed alphabet (gap included, gap-gap
    excluded), each receiving additive smoothing.
    """
    alphabet = sorted({s for pair in counts for s in pair} | {GAP})
    universe = [
        p for p in combinations_with_replacement(alphabet, 2) if p != (GAP, GAP)
    ]
    smoothed = {}
    for a, b in universe:
        key = (a, b) if a <= b else (b, a)
        smoothed[key] = counts.get(key, 0.0) + smoothing
    total = sum(smoothed.values())

    occurrence = {s: 0.0 for s in alphabet}
    for (a, b), c in smoothed.items():
        occurrence[a] += c
        occurrence[b] += c  # (a,a) counted twice: two slots in the column pair

    raw = {}
    for key, c in smoothed.items():
        a, b = key
        p_joint = c / total
        p_a = occurrence[a] / (2.0 * total)
        p_b = occurrence[b] / (2.0 * total)
        raw[key] = -math.log2(p_joint / (p_a * p_b))

    lo, hi = min(raw.values()), max(raw.values())
    span = hi - lo
    dist = {}
    for key, v in raw.items():
        dist[key] = 0.0 if span == 0.0 else (v - lo) / span
    for s in alphabet:
        if s != GAP:
            dist[(s, s)] = 0.0
    return dist


def _count_columns(alignments) -> dict[tuple[str, str], int]:
    counts: dict[tuple[str, str], int] = {}
    for al in alignments:
        for col in al.columns:
            a = col.left.symbol if col.left is not None else GAP
            b = col.right.symbol if col.right is not None else GAP
            key = (a, b) if a <= b else (b, a)
            counts[key] = counts.get(key, 0) + 1
    return counts


def _alignment_signature(alignments):
    return tuple(
        tuple(
            (
                col.left.symbol if col.left is not None else GAP,
                col.right.symbol if col.right is not None else GAP,
            )
            for col in al.columns
        )
        for al in alignments
    )


def induce_distances(
    corpus: AlignmentCorpus, init: CostModel, opts: InductionOptions = InductionOptions()
) -> PmiTable:
    """Iterative PMI induction of segment distances from a pair corpus.

    Non-convergence within max_iter is not an error; the returned table
    records converged=False.
    """
    if len(corpus) == 0:
        raise EmptyCorpus("no transcription pairs for PMI induction")
    if len(corpus) < opts.min_pairs:
        log.warning(
            "PMI induction corpus has only %d pairs (recommended minimum %d); "
            "distances may be unreliable",
            len(corpus),
            opts.min_pairs,
        )

    cm = init
    prev_dist = None
    prev_sig = None
    dist = {}
    converged = False
    iterations = 0
    for iterations in range(1, opts.max_iter + 1):
        alignments = [align_pair(a, b, cm) for a, b in corpus.pairs]
        sig = _alignment_signature(alignments)
        if sig == prev_sig:
            converged = True
            break
        dist = distances_from_counts(_count_columns(alignments), opts.smoothing)
        if prev_dist is not None:
            keys = set(dist) | set(prev_dist)
            delta = max(abs(dist.get(k, 1.0) - prev_dist.get(k, 1.0)) for k in keys)
            if delta < opts.tol:
                converged = True
                break
        prev_dist = dist
        prev_sig = sig
        cm = CostModel(PmiTable(dict(dist)), constrained=init.constrained)

    return PmiTable(dict(dist), iterations_run=iterations, converged=converged)


def to_cost_model(table: PmiTable, constrained: bool = True) -> CostModel:
    """Cost model over PMI distances; the vowel-consonant ban (with the
    schwa-sonorant exception) overrides any learned value when active."""
    return CostModel(table, constrained=constrained)

"""Cost models for weighted alignment.

A cost model combines a symmetric distance table over segment symbols
with the linguistic constraint policy: vowels may not substitute with
consonants, except that schwa may align with the sonorant consonants.
Forbidden substitutions get infinite cost, so an indel path always wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .phonetics import Segment, SegmentClass

FORBIDDEN = math.inf

# Gap sentinel used in distance tables and serialized output.
GAP = "-"


class BinaryDistanceTable:
    """Unit distances: 0 for identical symbols, 1 otherwise (gaps cost 1)."""

    def distance(self, a: str | None, b: str | None) -> float:
        if a is None and b is None:
            return 0.0
        if a is None or b is None:
            return 1.0
        return 0.0 if a == b else 1.0


def substitution_allowed(a: Segment, b: Segment) -> bool:
    """Constraint policy: no vowel-consonant pairing, schwa-sonorant excepted."""
    if a.klass is b.klass:
        return True
    vowel, cons = (a, b) if a.klass is SegmentClass.VOWEL else (b, a)
    return vowel.is_schwa and cons.is_sonorant_consonant


@dataclass(frozen=True)
class CostModel:
    distances: object  # anything with .distance(symbol_or_None, symbol_or_None)
    constrained: bool = True

    def subst(self, a: Segment, b: Segment) -> float:
        if self.constrained and not substitution_allowed(a, b):
            return FORBIDDEN
        return self.distances.distance(a.symbol, b.symbol)

    def indel(self, a: Segment) -> float:
        return self.distances.distance(a.symbol, None)


def binary_cost_model(constrained: bool = True) -> CostModel:
    return CostModel(BinaryDistanceTable(), constrained=constrained)

"""Toolkit for measuring real-time phonetic convergence and divergence
between two time-separated dialect corpora relative to a standard variety."""

from .costs import FORBIDDEN, GAP, BinaryDistanceTable, CostModel, binary_cost_model
from .pairwise import PairAlignment, align_pair, enumerate_optimal, normalized_distance
from .phonetics import (
    Segment,
    SegmentClass,
    SegmentTable,
    Source,
    Transcription,
    make_transcription,
    tokenize,
)
from .pmi import (
    AlignmentCorpus,
    InductionOptions,
    PmiTable,
    induce_distances,
    to_cost_model,
)
from .triple import (
    ChangeRecord,
    TripleAlignment,
    align_triple,
    column_direction,
    decompose,
    double_pairwise_delta,
)

__version__ = "0.1.0"

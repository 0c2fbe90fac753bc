"""Corpus ingestion, triple pairing, and exclusion handling.

Input rows are manual annotations: cognate identity and exclusion
judgments are consumed, never inferred. A (location, word) cell yields a
comparison triple only when the older, newer, and standard transcriptions
are all present, unflagged, and the older/newer cognates match.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import DuplicateRecord, ParseError
from .phonetics import SegmentTable, Source, Transcription, make_transcription


class Exclusion(Enum):
    LEXICAL_MISMATCH = "lex"
    MORPHOLOGICAL_VARIANT = "morph"
    PHONETIC_REDUCTION = "reduction"
    MISSING_DATA = "missing"


# Reporting priority when several reasons apply to one cell.
_EXCLUSION_PRIORITY = (
    Exclusion.MISSING_DATA,
    Exclusion.LEXICAL_MISMATCH,
    Exclusion.MORPHOLOGICAL_VARIANT,
    Exclusion.PHONETIC_REDUCTION,
)

_SOURCE_TOKENS = {s.value: s for s in Source}
_EXCLUSION_TOKENS = {e.value: e for e in Exclusion}

GROUPS = ("FR", "DU-FR", "GR", "LS")

_HEADER = ("location", "word", "source", "transcription", "cognate_id", "exclusion")


@dataclass(frozen=True)
class CorpusRecord:
    location: str
    word: str
    source: Source
    raw: str
    cognate_id: str | None
    exclusion: Exclusion | None


@dataclass(frozen=True)
class PairedTriple:
    location: str
    word: str
    older: Transcription
    newer: Transcription
    standard: Transcription


@dataclass(frozen=True)
class ExcludedPair:
    location: str
    word: str
    reason: Exclusion


def ingest(path) -> list[CorpusRecord]:
    """Parse the corpus TSV; duplicate (location, word, source) rows and
    malformed fields are errors."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ParseError(1, "empty corpus file")
    header = tuple(lines[0].rstrip("\n").split("\t"))
    if header != _HEADER:
        raise ParseError(1, f"expected header {list(_HEADER)}, got {list(header)}")

    records = []
    seen: set[tuple[str, str, Source]] = set()
    std_words: set[str] = set()
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != len(_HEADER):
            raise ParseError(lineno, f"expected {len(_HEADER)} fields, got {len(fields)}")
        location, word, source_tok, raw, cognate_id, exclusion_tok = fields
        if not location or not word:
            raise ParseError(lineno, "location and word must be non-empty")
        if source_tok not in _SOURCE_TOKENS:
            raise ParseError(lineno, f"unknown source {source_tok!r}")
        source = _SOURCE_TOKENS[source_tok]
        if exclusion_tok == "-":
            exclusion = None
        elif exclusion_tok in _EXCLUSION_TOKENS:
            exclusion = _EXCLUSION_TOKENS[exclusion_tok]
        else:
            raise ParseError(lineno, f"unknown exclusion tag {exclusion_tok!r}")
        if raw in ("", "-"):
            if exclusion is not Exclusion.MISSING_DATA:
                raise ParseError(
                    lineno, "empty transcription requires the 'missing' exclusion tag"
                )
            raw = ""
        key = (location, word, source)
        if key in seen:
            raise DuplicateRecord(f"duplicate record for {key}")
        seen.add(key)
        if source is Source.STANDARD:
            if word in std_words:
                raise DuplicateRecord(
                    f"multiple standard transcriptions for word {word!r}"
                )
            std_words.add(word)
        records.append(
            CorpusRecord(
                location, word, source, raw, cognate_id or None, exclusion
            )
        )
    return records


def pair(
    records: list[CorpusRecord], table: SegmentTable
) -> tuple[list[PairedTriple], list[ExcludedPair]]:
    """Group records into (location, word) comparison triples.

    Exclusions are data, not errors; each excluded cell carries the
    highest-priority governing reason. Output is ordered by location then
    word for reproducibility.
    """
    standard = {
        r.word: r for r in records if r.source is Source.STANDARD and r.raw
    }
    cells: dict[tuple[str, str], dict[Source, CorpusRecord]] = {}
    for r in records:
        if r.source is Source.STANDARD:
            continue
        cells.setdefault((r.location, r.word), {})[r.source] = r

    triples = []
    excluded = []
    for (location, word) in sorted(cells):
        cell = cells[(location, word)]
        older = cell.get(Source.OLDER)
        newer = cell.get(Source.NEWER)
        std = standard.get(word)

        reasons = set()
        if older is None or newer is None or std is None:
            reasons.add(Exclusion.MISSING_DATA)
        for r in (older, newer, std):
            if r is None:
                continue
            if r.exclusion is not None:
                reasons.add(r.exclusion)
            if not r.raw:
                reasons.add(Exclusion.MISSING_DATA)
        if (
            older is not None
            and newer is not None
            and older.cognate_id != newer.cognate_id
        ):
            reasons.add(Exclusion.LEXICAL_MISMATCH)

        if reasons:
            reason = next(p for p in _EXCLUSION_PRIORITY if p in reasons)
            excluded.append(ExcludedPair(location, word, reason))
            continue
        triples.append(
            PairedTriple(
                location,
                word,
                make_transcription(older.raw, table, location, word, Source.OLDER),
                make_transcription(newer.raw, table, location, word, Source.NEWER),
                make_transcription(std.raw, table, std.location, word, Source.STANDARD),
            )
        )
    return triples, excluded


@dataclass(frozen=True)
class RetentionReport:
    per_location: dict[str, tuple[int, int]]  # location -> (retained, total)
    retained: int
    total: int

    @property
    def retention(self) -> float:
        return self.retained / self.total if self.total else 0.0

    def format(self) -> str:
        lines = ["location\tretained\ttotal"]
        for loc in sorted(self.per_location):
            kept, total = self.per_location[loc]
            lines.append(f"{loc}\t{kept}\t{total}")
        lines.append(
            f"overall\t{self.retained}\t{self.total}\t(retention {self.retention:.4f})"
        )
        return "\n".join(lines) + "\n"


def retention_report(
    triples: list[PairedTriple], excluded: list[ExcludedPair]
) -> RetentionReport:
    per_location: dict[str, list[int]] = {}
    for t in triples:
        per_location.setdefault(t.location, [0, 0])[0] += 1
        per_location[t.location][1] += 1
    for e in excluded:
        per_location.setdefault(e.location, [0, 0])[1] += 1
    return RetentionReport(
        {loc: (kept, total) for loc, (kept, total) in per_location.items()},
        retained=len(triples),
        total=len(triples) + len(excluded),
    )


@dataclass(frozen=True)
class GroupMap:
    assignments: dict[str, str]  # location -> group in GROUPS

    def __post_init__(self):
        for loc, group in self.assignments.items():
            if group not in GROUPS:
                raise ValueError(f"{loc!r}: unknown group {group!r}")

    def group(self, location: str) -> str:
        return self.assignments[location]

    def is_ls(self, location: str) -> bool:
        return self.assignments[location] == "LS"

    @classmethod
    def from_file(cls, path) -> "GroupMap":
        assignments = {}
        for lineno, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), 1
        ):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise ParseError(lineno, "expected location<TAB>group")
            location, group = fields
            group = "DU-FR" if group == "DUFR" else group
            if group not in GROUPS:
                raise ParseError(lineno, f"unknown group {group!r}")
            if location in assignments:
                raise ParseError(lineno, f"duplicate location {location!r}")
            assignments[location] = group
        return cls(assignments)

"""Phonetic segment model and IPA tokenization.

A segment is one phonetic token: a base IPA symbol plus any length marks
or diacritics attached to it. Segment identity for cost lookups is the
full base+modifier string, so [oː] and [o] are distinct symbols.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import EmptyInput, ParseError, UnknownSymbol


class SegmentClass(Enum):
    VOWEL = "V"
    CONSONANT = "C"


class Source(Enum):
    OLDER = "older"
    NEWER = "newer"
    STANDARD = "standard"


# The seven sonorant consonants that a schwa may align with.
SONORANTS = frozenset("mlnrŋjw")
SCHWA = "ə"

# Spacing characters that attach to the preceding base symbol. Combining
# characters (Unicode category Mn) are always treated as modifiers.
MODIFIER_CHARS = frozenset("ːˑ˞ʰʷʲˠˤⁿˡʼ")

_VOWELS = "iyɨʉɯuɪʏʊeøɘɵɤoəɛœɜɞʌɔæɐaɶɑɒ"
_CONSONANTS = (
    "pbtdʈɖcɟkgɡqɢʔ"  # plosives
    "mɱnɳɲŋɴ"  # nasals
    "ʙrʀⱱɾɽ"  # trills, taps
    "ɸβfvθðszʃʒʂʐçʝxɣχʁħʕhɦɬɮ"  # fricatives
    "ʋɹɻjɰwlɭʎʟ"  # approximants
)


def _is_modifier(ch: str) -> bool:
    return ch in MODIFIER_CHARS or unicodedata.category(ch) == "Mn"


@dataclass(frozen=True)
class Segment:
    base: str
    modifiers: tuple[str, ...]
    klass: SegmentClass
    is_sonorant_consonant: bool
    is_schwa: bool

    def __post_init__(self):
        if self.is_schwa and self.klass is not SegmentClass.VOWEL:
            raise ValueError("schwa segments must be vowels")
        if self.is_sonorant_consonant and self.klass is not SegmentClass.CONSONANT:
            raise ValueError("sonorant flag is only valid for consonants")

    @property
    def symbol(self) -> str:
        """Full identity string used for cost-table lookups."""
        return self.base + "".join(self.modifiers)

    def __str__(self) -> str:
        return self.symbol


class SegmentTable:
    """Maps symbol strings to (class, sonorant, schwa) classifications.

    Unknown base symbols are a hard error: silent misclassification would
    corrupt the vowel-consonant alignment constraint downstream.
    """

    def __init__(self, entries: dict[str, tuple[SegmentClass, bool, bool]]):
        for symbol, (klass, sonorant, schwa) in entries.items():
            if schwa and klass is not SegmentClass.VOWEL:
                raise ValueError(f"{symbol!r}: schwa flag requires a vowel")
            if sonorant and klass is not SegmentClass.CONSONANT:
                raise ValueError(f"{symbol!r}: sonorant flag requires a consonant")
        self.entries = dict(entries)

    @classmethod
    def default(cls) -> "SegmentTable":
        entries = {}
        for ch in _VOWELS:
            entries[ch] = (SegmentClass.VOWEL, False, ch == SCHWA)
        for ch in _CONSONANTS:
            entries[ch] = (SegmentClass.CONSONANT, ch in SONORANTS, False)
        return cls(entries)

    @classmethod
    def from_file(cls, path) -> "SegmentTable":
        """Parse a line-oriented table: ``symbol<TAB>V|C<TAB>flags``.

        Flags are comma-separated members of {sonorant, schwa}; the flags
        column may be omitted or "-". Lines starting with '#' are comments.
        """
        entries = {}
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) < 2:
                raise ParseError(lineno, "expected symbol<TAB>V|C[<TAB>flags]")
            symbol = unicodedata.normalize("NFC", fields[0])
            if fields[1] not in ("V", "C"):
                raise ParseError(lineno, f"class must be V or C, got {fields[1]!r}")
            klass = SegmentClass.VOWEL if fields[1] == "V" else SegmentClass.CONSONANT
            sonorant = schwa = False
            if len(fields) > 2 and fields[2] not in ("", "-"):
                for flag in fields[2].split(","):
                    flag = flag.strip()
                    if flag == "sonorant":
                        sonorant = True
                    elif flag == "schwa":
                        schwa = True
                    else:
                        raise ParseError(lineno, f"unknown flag {flag!r}")
            if symbol in entries:
                raise ParseError(lineno, f"duplicate entry for {symbol!r}")
            if schwa and klass is not SegmentClass.VOWEL:
                raise ParseError(lineno, f"{symbol!r}: schwa flag requires a vowel")
            if sonorant and klass is not SegmentClass.CONSONANT:
                raise ParseError(lineno, f"{symbol!r}: sonorant flag requires a consonant")
            entries[symbol] = (klass, sonorant, schwa)
        return cls(entries)

    def classify(self, symbol: str) -> tuple[SegmentClass, bool, bool]:
        """Classification for a full symbol; falls back to its base symbol."""
        if symbol in self.entries:
            return self.entries[symbol]
        base = "".join(ch for ch in symbol if not _is_modifier(ch))
        if base in self.entries:
            return self.entries[base]
        raise UnknownSymbol(0, symbol)

    def segment(self, base: str, modifiers: tuple[str, ...] = ()) -> Segment:
        klass, sonorant, schwa = self.classify(base + "".join(modifiers))
        return Segment(base, modifiers, klass, sonorant, schwa)


@dataclass(frozen=True)
class Transcription:
    segments: tuple[Segment, ...]
    location: str = ""
    word: str = ""
    source: Source | None = None

    def __len__(self) -> int:
        return len(self.segments)

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(seg.symbol for seg in self.segments)

    def __str__(self) -> str:
        return "".join(self.symbols)


def tokenize(raw: str, table: SegmentTable) -> tuple[Segment, ...]:
    """Segment an IPA string by maximal munch.

    The input is NFC-normalized first; each base symbol plus all
    immediately following modifier characters forms one segment.
    Concatenating the segment symbols reproduces the normalized input.
    """
    if raw == "":
        raise EmptyInput("empty transcription")
    raw = unicodedata.normalize("NFC", raw)
    segments = []
    i = 0
    while i < len(raw):
        ch = raw[i]
        if _is_modifier(ch):
            # modifier with no preceding base symbol
            raise UnknownSymbol(i, ch)
        if ch not in table.entries:
            raise UnknownSymbol(i, ch)
        j = i + 1
        while j < len(raw) and _is_modifier(raw[j]):
            j += 1
        modifiers = tuple(raw[i + 1 : j])
        segments.append(table.segment(ch, modifiers))
        i = j
    return tuple(segments)


def make_transcription(
    raw: str,
    table: SegmentTable,
    location: str = "",
    word: str = "",
    source: Source | None = None,
) -> Transcription:
    return Transcription(tokenize(raw, table), location, word, source)

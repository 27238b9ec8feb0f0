"""Keyword frequencies, focal co-occurrence, top-K ranking, overlap and growth."""

from __future__ import annotations

import csv
import enum
import io
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from .ingest import ArticleRecord, Corpus
from .keywords import CanonicalKeyword, SynonymMap, keyword_set, normalize


class FieldKind(str, enum.Enum):
    AUTHOR = "author"
    PLUS = "plus"

    @property
    def long_name(self) -> str:
        return "author-keywords" if self is FieldKind.AUTHOR else "keywords-plus"


def record_keywords(
    record: ArticleRecord, field_kind: FieldKind | str, synonyms: SynonymMap | None = None
) -> set[CanonicalKeyword]:
    raw = record.author_keywords if FieldKind(field_kind) is FieldKind.AUTHOR else record.keywords_plus
    return keyword_set(raw, synonyms)


def keyword_frequencies(
    corpus: Corpus | Iterable[ArticleRecord],
    field_kind: FieldKind | str = FieldKind.AUTHOR,
    synonyms: SynonymMap | None = None,
) -> dict[CanonicalKeyword, int]:
    """Number of records whose keyword set contains each keyword."""
    counts: Counter[CanonicalKeyword] = Counter()
    for rec in corpus:
        counts.update(record_keywords(rec, field_kind, synonyms))
    return dict(counts)


@dataclass(frozen=True)
class CooccurrenceTable:
    focal: CanonicalKeyword
    field_kind: FieldKind
    counts: dict[CanonicalKeyword, int]
    n_focal_papers: int

    def __post_init__(self) -> None:
        if self.focal in self.counts:
            raise ValueError("focal keyword cannot be a table entry")
        for kw, c in self.counts.items():
            if not 1 <= c <= self.n_focal_papers:
                raise ValueError(f"count {c} for {kw.canonical!r} outside [1, {self.n_focal_papers}]")

    def keywords(self) -> set[CanonicalKeyword]:
        return set(self.counts)


def _as_focal(focal, synonyms) -> CanonicalKeyword:
    if isinstance(focal, str):
        focal = normalize(focal, synonyms)
        if focal is None:
            raise ValueError("focal keyword is empty")
    return focal


def focal_records(
    corpus: Corpus | Iterable[ArticleRecord], focal: CanonicalKeyword | str, synonyms: SynonymMap | None = None
) -> list[ArticleRecord]:
    """Records whose author keywords contain ``focal``."""
    focal = _as_focal(focal, synonyms)
    return [rec for rec in corpus if focal in keyword_set(rec.author_keywords, synonyms)]


def cooccurring_with(
    corpus: Corpus | Iterable[ArticleRecord],
    focal: CanonicalKeyword | str,
    field_kind: FieldKind | str = FieldKind.AUTHOR,
    synonyms: SynonymMap | None = None,
) -> CooccurrenceTable:
    """Count keywords of ``field_kind`` in records that carry ``focal`` as an author keyword.

    The focal keyword is always looked up among the author keywords, even when
    ``field_kind`` selects Keywords Plus.
    """
    focal = _as_focal(focal, synonyms)
    field_kind = FieldKind(field_kind)
    counts: Counter[CanonicalKeyword] = Counter()
    n_focal = 0
    for rec in focal_records(corpus, focal, synonyms):
        n_focal += 1
        kws = record_keywords(rec, field_kind, synonyms)
        kws.discard(focal)
        counts.update(kws)
    return CooccurrenceTable(focal, field_kind, dict(counts), n_focal)


@dataclass(frozen=True)
class RankedKeywords:
    entries: tuple[tuple[CanonicalKeyword, int], ...]
    k: int

    def __post_init__(self) -> None:
        if len(self.entries) > self.k:
            raise ValueError("more entries than k")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def keywords(self) -> list[CanonicalKeyword]:
        return [kw for kw, _ in self.entries]


def rank(counts: Mapping[CanonicalKeyword, int]) -> list[tuple[CanonicalKeyword, int]]:
    """Sort by descending count, ties by ascending canonical text."""
    return sorted(counts.items(), key=lambda item: (-item[1], item[0].canonical))


def top_k(table: CooccurrenceTable | Mapping[CanonicalKeyword, int], k: int) -> RankedKeywords:
    if k < 1:
        raise ValueError("k must be >= 1")
    counts = table.counts if isinstance(table, CooccurrenceTable) else table
    return RankedKeywords(tuple(rank(counts)[:k]), k)


def overlap(old_set: Iterable, new_set: Iterable) -> Fraction:
    """Percentage overlap ``100 * |old & new| / |old | new|`` as an exact fraction."""
    old_set, new_set = set(old_set), set(new_set)
    union = old_set | new_set
    if not union:
        raise ValueError("overlap is undefined for two empty sets")
    return Fraction(100 * len(old_set & new_set), len(union))


def overlap_report(old_set: Iterable, new_set: Iterable) -> dict:
    old_set, new_set = set(old_set), set(new_set)
    return {
        "old_size": len(old_set),
        "new_size": len(new_set),
        "intersection": len(old_set & new_set),
        "union": len(old_set | new_set),
        "overlap_pct": to_fixed(overlap(old_set, new_set)),
    }


def growth_ratio(count_late: int, count_early: int) -> Fraction:
    """Ratio of later-period to earlier-period paper counts."""
    if count_early == 0:
        raise ZeroDivisionError("growth ratio undefined: earlier period has no papers")
    if count_early < 0 or count_late < 0:
        raise ValueError("paper counts must be non-negative")
    return Fraction(count_late, count_early)


def format_fixed(value: Fraction | int, places: int = 2) -> str:
    """Exact decimal rendering, rounding half away from zero."""
    value = Fraction(value)
    scale = 10**places
    scaled = abs(value) * scale
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    sign = "-" if value < 0 and q else ""
    whole, frac = divmod(q, scale)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


def to_fixed(value: Fraction | None, places: int = 2) -> float | None:
    return None if value is None else float(format_fixed(value, places))


def multiword_containing(keywords: Iterable[CanonicalKeyword], term: str) -> list[CanonicalKeyword]:
    """Keywords of two or more words that contain ``term`` as a whole word."""
    term = term.strip().lower()
    hits = set()
    for kw in keywords:
        words = kw.canonical.split(" ")
        if len(words) >= 2 and term in words:
            hits.add(kw)
    return sorted(hits)


# --- lexicon ----------------------------------------------------------------

CATEGORIES = ("foundational", "tool", "specific")
UNCLASSIFIED = "unclassified"

CategoryLexicon = Mapping[str, str]

_TABLE1 = {
    "foundational": [
        "Chaos", "Fractals", "Self-Organization", "Emergence", "Entropy", "Path dependence",
        "Autopoiesis", "Self-similarity", "Complex adaptive systems",
    ],
    "tool": [
        "ABM", "Networks", "Stochastic Process", "Algorithms", "Volatility", "Dimensions",
        "Simulations", "Power laws", "Matching models",
    ],
    "specific": [
        "Climate Change", "Habitat Complexity", "Financial Market", "Aging", "Sustainability",
        "EEG", "Social work", "Working memory", "Biodiversity",
    ],
}


def default_lexicon() -> dict[str, str]:
    """The published tentative classification of co-occurring author keywords."""
    return {normalize(word).canonical: cat for cat, words in _TABLE1.items() for word in words}


def make_lexicon(pairs: Iterable[tuple[str, str]]) -> dict[str, str]:
    lexicon: dict[str, str] = {}
    for raw_kw, raw_cat in pairs:
        kw = normalize(raw_kw)
        cat = raw_cat.strip().lower()
        if kw is None:
            raise ValueError("empty keyword in lexicon")
        if cat not in CATEGORIES:
            raise ValueError(f"unknown category {raw_cat!r} for {raw_kw!r}")
        lexicon[kw.canonical] = cat
    return lexicon


def load_lexicon(path: str | Path) -> dict[str, str]:
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:2]] != ["keyword", "category"]:
            raise ValueError(f"{path}: expected header 'keyword,category'")
        return make_lexicon((row[0], row[1]) for row in reader if row and any(c.strip() for c in row))


def classify(kw: CanonicalKeyword | str, lexicon: CategoryLexicon) -> str:
    key = kw.canonical if isinstance(kw, CanonicalKeyword) else normalize(kw).canonical
    return lexicon.get(key, UNCLASSIFIED)


# --- CSV --------------------------------------------------------------------


def ranked_csv(entries: Iterable[tuple[CanonicalKeyword, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rank", "keyword", "count"])
    for i, (kw, count) in enumerate(entries, start=1):
        writer.writerow([i, kw.display, count])
    return buf.getvalue()


def read_ranked_csv(path: str | Path) -> list[tuple[CanonicalKeyword, int]]:
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["rank", "keyword", "count"]:
            raise ValueError(f"{path}: expected header rank,keyword,count")
        return [(normalize(row["keyword"]), int(row["count"])) for row in reader]

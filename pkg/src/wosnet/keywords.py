"""Keyword normalization and per-record keyword sets."""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

# hyphen, non-breaking hyphen, figure dash, en/em dash, horizontal bar,
# minus sign, small/fullwidth hyphen-minus
_DASHES = re.compile("[‐‑‒–—―−﹘﹣－]")

SynonymMap = Mapping[str, str]


@dataclass(frozen=True, order=True)
class CanonicalKeyword:
    """A normalized keyword.

    Equality, hashing and ordering use ``canonical`` only, so sets of
    keywords deduplicate on the lookup key while keeping the first surface
    form that was inserted.
    """

    canonical: str
    display: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not self.display:
            object.__setattr__(self, "display", self.canonical)

    def __str__(self) -> str:
        return self.canonical


def _clean(raw: str) -> str:
    return " ".join(_DASHES.sub("-", raw).split())


def normalize(raw: str, synonyms: SynonymMap | None = None) -> CanonicalKeyword | None:
    cleaned = _clean(raw)
    if not cleaned:
        return None
    canonical = cleaned.lower()
    if synonyms:
        canonical = synonyms.get(canonical, canonical)
    return CanonicalKeyword(canonical, cleaned)


def keyword(text: str) -> CanonicalKeyword:
    """Shorthand for building a keyword that must be non-empty."""
    kw = normalize(text)
    if kw is None:
        raise ValueError(f"empty keyword: {text!r}")
    return kw


def keyword_set(raw_keywords: Iterable[str], synonyms: SynonymMap | None = None) -> set[CanonicalKeyword]:
    out: set[CanonicalKeyword] = set()
    for raw in raw_keywords:
        kw = normalize(raw, synonyms)
        if kw is not None and kw not in out:
            out.add(kw)
    return out


def author_keyword_set(record, synonyms: SynonymMap | None = None) -> set[CanonicalKeyword]:
    return keyword_set(record.author_keywords, synonyms)


def keywords_plus_set(record, synonyms: SynonymMap | None = None) -> set[CanonicalKeyword]:
    return keyword_set(record.keywords_plus, synonyms)


def make_synonym_map(pairs: Iterable[tuple[str, str]]) -> dict[str, str]:
    """Build a validated alias -> preferred map from raw text pairs.

    Both sides are normalized. Self-maps are dropped. A preferred form that
    is itself an alias is rejected, which also rules out cycles.
    """
    mapping: dict[str, str] = {}
    for alias_raw, preferred_raw in pairs:
        alias, preferred = normalize(alias_raw), normalize(preferred_raw)
        if alias is None or preferred is None:
            raise ValueError(f"empty synonym entry: {alias_raw!r} -> {preferred_raw!r}")
        if alias.canonical == preferred.canonical:
            continue
        previous = mapping.get(alias.canonical)
        if previous is not None and previous != preferred.canonical:
            raise ValueError(f"alias {alias.canonical!r} mapped to both {previous!r} and {preferred.canonical!r}")
        mapping[alias.canonical] = preferred.canonical
    chained = sorted(a for a, p in mapping.items() if p in mapping)
    if chained:
        raise ValueError(f"synonym targets are themselves aliases: {chained}")
    return mapping


def load_synonyms(path: str | Path) -> dict[str, str]:
    """Read a two-column ``alias,preferred`` CSV (header row required)."""
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:2]] != ["alias", "preferred"]:
            raise ValueError(f"{path}: expected header 'alias,preferred'")
        rows = [(row[0], row[1]) for row in reader if row and any(cell.strip() for cell in row)]
    return make_synonym_map(rows)

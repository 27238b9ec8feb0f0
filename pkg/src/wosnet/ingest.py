"""Web of Science plain-text export parsing, corpus filtering and JSON I/O.

The accepted input is the tagged "plain text" export::

    FN Clarivate Analytics Web of Science
    VR 1.0
    PT J
    TI A title that may
       continue on the next line
    DE Complexity; Agent-based
       models
    UT WOS:000123456700001
    ER

    EF

Each field line is a two-character tag, one space and the value. Lines
starting with exactly three spaces continue the previous field.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .keywords import CanonicalKeyword, normalize

logger = logging.getLogger(__name__)

KNOWN_TAGS = frozenset(
    ["FN", "VR", "PT", "AU", "TI", "SO", "DE", "ID", "PY", "DT", "WC", "SC", "UT", "ER", "EF"]
)
_LIST_TAGS = {"DE": "author_keywords", "ID": "keywords_plus", "SC": "research_areas", "WC": "wos_categories"}
_TEXT_TAGS = {"TI": "title", "SO": "source", "DT": "doc_type", "UT": "id"}
_RECORD_KEYS = (
    "id",
    "title",
    "source",
    "pub_year",
    "doc_type",
    "author_keywords",
    "keywords_plus",
    "research_areas",
    "wos_categories",
)
YEAR_MIN, YEAR_MAX = 1900, 2100
_TAG_RE = re.compile(r"[A-Z][A-Z0-9]\Z")


class WosParseError(ValueError):
    """Unrecoverable problem in a WoS export."""


class SchemaError(ValueError):
    """Corpus JSON does not match the canonical schema."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class ArticleRecord:
    id: str
    title: str = ""
    source: str = ""
    pub_year: int | None = None
    doc_type: str = ""
    author_keywords: tuple[str, ...] = ()
    keywords_plus: tuple[str, ...] = ()
    research_areas: tuple[str, ...] = ()
    wos_categories: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("record id must be non-empty")
        if self.pub_year is not None and not YEAR_MIN <= self.pub_year <= YEAR_MAX:
            raise ValueError(f"{self.id}: pub_year {self.pub_year} outside [{YEAR_MIN}, {YEAR_MAX}]")
        for name in _LIST_TAGS.values():
            value = getattr(self, name)
            if not isinstance(value, tuple):
                object.__setattr__(self, name, value := tuple(value))
            if any(not item or item != item.strip() for item in value):
                raise ValueError(f"{self.id}: {name} has empty or unstripped entries")


@dataclass(frozen=True)
class Corpus:
    records: tuple[ArticleRecord, ...] = ()
    provenance: tuple[str, ...] = ()
    period_label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        object.__setattr__(self, "provenance", tuple(self.provenance))
        seen: set[str] = set()
        for rec in self.records:
            if rec.id in seen:
                raise ValueError(f"duplicate record id {rec.id!r}")
            seen.add(rec.id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


@dataclass(frozen=True)
class CorpusFilter:
    """Selection criteria; ``None``/empty clauses are permissive."""

    year_range: tuple[int, int] | None = None
    doc_types: frozenset[str] = frozenset()
    research_areas: frozenset[str] = frozenset()
    require_author_keyword: CanonicalKeyword | None = None

    def __post_init__(self) -> None:
        if self.year_range is not None:
            low, high = self.year_range
            if low > high:
                raise ValueError(f"year range {low}-{high} is inverted")
            object.__setattr__(self, "year_range", (int(low), int(high)))
        object.__setattr__(self, "doc_types", frozenset(self.doc_types))
        object.__setattr__(self, "research_areas", frozenset(self.research_areas))

    def describe(self) -> str:
        parts = []
        if self.year_range is not None:
            parts.append(f"years={self.year_range[0]}-{self.year_range[1]}")
        if self.doc_types:
            parts.append("doc_types=" + "|".join(sorted(self.doc_types)))
        if self.research_areas:
            parts.append("areas=" + "|".join(sorted(self.research_areas)))
        if self.require_author_keyword is not None:
            parts.append(f"author_keyword={self.require_author_keyword.canonical}")
        return "filter(" + ", ".join(parts) + ")"


def parse_years(text: str) -> tuple[int, int]:
    """Parse ``"2000-2004"`` (or a single ``"2001"``) into an inclusive pair."""
    low, sep, high = text.strip().partition("-")
    try:
        pair = (int(low), int(high if sep else low))
    except ValueError:
        raise ValueError(f"bad year range {text!r}, expected A-B") from None
    if pair[0] > pair[1]:
        raise ValueError(f"year range {text!r} is inverted")
    return pair


def _split_list(value: str) -> tuple[str, ...]:
    return tuple(item for item in (part.strip() for part in value.split(";")) if item)


def _decode(data: bytes, source: str) -> str:
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise WosParseError(f"{source}: not valid UTF-8 at byte {exc.start}") from None


def _build_record(
    fields: dict[str, list[str]], source: str, ordinal: int, warnings: list[str]
) -> ArticleRecord:
    joined = {tag: " ".join(parts) for tag, parts in fields.items()}
    kwargs: dict = {}
    for tag, name in _TEXT_TAGS.items():
        if tag in joined:
            kwargs[name] = " ".join(joined[tag].split())
    for tag, name in _LIST_TAGS.items():
        if tag in joined:
            kwargs[name] = _split_list(joined[tag])
    if "PY" in joined:
        raw_year = joined["PY"].strip()
        if raw_year.isdigit() and YEAR_MIN <= int(raw_year) <= YEAR_MAX:
            kwargs["pub_year"] = int(raw_year)
        else:
            warnings.append(f"{source}: record {ordinal}: unusable PY {raw_year!r}, year set to unknown")
    if not kwargs.get("id"):
        kwargs["id"] = f"gen:{source}:{ordinal}"
        warnings.append(f"{source}: record {ordinal}: missing UT, assigned {kwargs['id']}")
    return ArticleRecord(**kwargs)


def parse_export(data: bytes | str, source: str = "<stream>") -> tuple[list[ArticleRecord], list[str]]:
    """Parse one WoS plain-text export.

    Returns the records in file order and a list of warnings. ``source`` is
    used in messages and in synthetic ids for records lacking a UT field.
    """
    text = _decode(data, source) if isinstance(data, bytes) else data.removeprefix("﻿")
    records: list[ArticleRecord] = []
    warnings: list[str] = []
    unknown: dict[str, int] = {}
    fields: dict[str, list[str]] = {}
    in_record = False
    last_tag: str | None = None
    start_line = 0

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            last_tag = None
            continue
        if line[:3] == "   ":
            if last_tag is None:
                warnings.append(f"{source}:{lineno}: continuation line without a field, ignored")
            elif last_tag in fields:
                fields[last_tag].append(line.strip())
            continue
        tag = line[:2]
        value = line[3:].strip() if len(line) > 2 else ""
        if not _TAG_RE.match(tag) or (len(line) > 2 and line[2] != " "):
            warnings.append(f"{source}:{lineno}: malformed field line ignored")
            last_tag = None
            continue
        if tag == "ER":
            if not in_record:
                warnings.append(f"{source}:{lineno}: ER without an open record ignored")
                continue
            records.append(_build_record(fields, source, len(records) + 1, warnings))
            fields, in_record, last_tag = {}, False, None
            continue
        if tag == "EF":
            if in_record:
                break
            last_tag = None
            continue
        if tag in ("FN", "VR") and not in_record:
            last_tag = None
            continue
        if not in_record:
            in_record, start_line = True, lineno
        last_tag = tag
        if tag not in KNOWN_TAGS:
            # its continuation lines are skipped because the tag never enters ``fields``
            unknown[tag] = unknown.get(tag, 0) + 1
            continue
        if tag in fields and tag in _LIST_TAGS:
            # repeated list tag: treat as another chunk of the same list
            fields[tag].append(";")
        fields.setdefault(tag, []).append(value)

    if in_record:
        raise WosParseError(f"{source}: record starting at line {start_line} has no ER terminator")
    for tag in sorted(unknown):
        warnings.append(f"{source}: unrecognized tag {tag!r} ignored ({unknown[tag]} occurrence(s))")
    return records, warnings


def load_corpus(paths: Sequence[str | Path], period_label: str = "") -> tuple[Corpus, list[str]]:
    """Parse export files in argument order into a single corpus.

    A record whose id was already seen is dropped with a warning.
    """
    records: list[ArticleRecord] = []
    warnings: list[str] = []
    seen: set[str] = set()
    for path in paths:
        path = Path(path)
        recs, warns = parse_export(path.read_bytes(), source=path.name)
        warnings.extend(warns)
        for rec in recs:
            if rec.id in seen:
                warnings.append(f"{path.name}: duplicate record id {rec.id!r} dropped")
                continue
            seen.add(rec.id)
            records.append(rec)
    provenance = tuple(f"file:{Path(p).name}" for p in paths)
    return Corpus(tuple(records), provenance, period_label), warnings


def _norm_text(text: str) -> str:
    return " ".join(text.split()).lower()


def matches(record: ArticleRecord, f: CorpusFilter) -> bool:
    if f.year_range is not None:
        if record.pub_year is None:
            return False
        if not f.year_range[0] <= record.pub_year <= f.year_range[1]:
            return False
    if f.doc_types:
        wanted = {_norm_text(t) for t in f.doc_types}
        # DT may carry several types, e.g. "Article; Proceedings Paper"
        have = {_norm_text(t) for t in record.doc_type.split(";")}
        if not wanted & have:
            return False
    if f.research_areas:
        wanted = {_norm_text(a) for a in f.research_areas}
        if not wanted & {_norm_text(a) for a in record.research_areas}:
            return False
    if f.require_author_keyword is not None:
        target = f.require_author_keyword.canonical
        if not any((kw := normalize(raw)) is not None and kw.canonical == target for raw in record.author_keywords):
            return False
    return True


def filter_corpus(corpus: Corpus, f: CorpusFilter, period_label: str | None = None) -> Corpus:
    kept = tuple(rec for rec in corpus.records if matches(rec, f))
    label = corpus.period_label if period_label is None else period_label
    return Corpus(kept, corpus.provenance + (f.describe(),), label)


# --- canonical JSON ---------------------------------------------------------


def record_to_dict(rec: ArticleRecord) -> dict:
    return {
        "id": rec.id,
        "title": rec.title,
        "source": rec.source,
        "pub_year": rec.pub_year,
        "doc_type": rec.doc_type,
        "author_keywords": list(rec.author_keywords),
        "keywords_plus": list(rec.keywords_plus),
        "research_areas": list(rec.research_areas),
        "wos_categories": list(rec.wos_categories),
    }


def serialize_corpus(corpus: Corpus) -> bytes:
    doc = {
        "period": corpus.period_label,
        "provenance": list(corpus.provenance),
        "records": [record_to_dict(r) for r in corpus.records],
    }
    return (json.dumps(doc, ensure_ascii=False, indent=1) + "\n").encode("utf-8")


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise SchemaError(path, message)


def _str_list(value, path: str) -> tuple[str, ...]:
    _expect(isinstance(value, list), path, "expected a list")
    for i, item in enumerate(value):
        _expect(isinstance(item, str), f"{path}[{i}]", "expected a string")
    return tuple(value)


def deserialize_corpus(data: bytes | str) -> Corpus:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    _expect(isinstance(doc, dict), "$", "expected an object")
    _expect(list(doc) == ["period", "provenance", "records"], "$", "keys must be period, provenance, records")
    _expect(isinstance(doc["period"], str), "$.period", "expected a string")
    provenance = _str_list(doc["provenance"], "$.provenance")
    _expect(isinstance(doc["records"], list), "$.records", "expected a list")
    records = []
    for i, raw in enumerate(doc["records"]):
        path = f"$.records[{i}]"
        _expect(isinstance(raw, dict), path, "expected an object")
        _expect(tuple(raw) == _RECORD_KEYS, path, "keys must be " + ", ".join(_RECORD_KEYS))
        for key in ("id", "title", "source", "doc_type"):
            _expect(isinstance(raw[key], str), f"{path}.{key}", "expected a string")
        year = raw["pub_year"]
        _expect(year is None or (isinstance(year, int) and not isinstance(year, bool)), f"{path}.pub_year", "expected an integer or null")
        lists = {key: _str_list(raw[key], f"{path}.{key}") for key in _LIST_TAGS.values()}
        try:
            records.append(
                ArticleRecord(raw["id"], raw["title"], raw["source"], year, raw["doc_type"], **lists)
            )
        except ValueError as exc:
            raise SchemaError(path, str(exc)) from None
    try:
        return Corpus(tuple(records), provenance, doc["period"])
    except ValueError as exc:
        raise SchemaError("$.records", str(exc)) from None


def read_any(paths: Iterable[str | Path]) -> tuple[Corpus, list[str]]:
    """Load corpus JSON or WoS exports, sniffing the first non-blank byte."""
    paths = [Path(p) for p in paths]
    if len(paths) == 1 and paths[0].read_bytes().lstrip(b"\xef\xbb\xbf \t\r\n")[:1] == b"{":
        return deserialize_corpus(paths[0].read_bytes()), []
    return load_corpus(paths)

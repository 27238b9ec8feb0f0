"""End-to-end run: parse, filter per period and area, count, compare, build MSTs.

Output layout under ``out``::

    manifest.json
    <area>/<period>/frequencies.csv
    <area>/<period>/cooccurrence.csv
    <area>/<period>/top<k>.csv
    <area>/<period>/multiword.csv
    <area>/<period>/categories.csv          (only with a lexicon)
    <area>/overlap.json                     (two periods)
    <area>/growth.json                      (two periods)
    <area>/<network period>/network.json
    <area>/<network period>/mst.dot
    <area>/<network period>/topology.json

Everything except the manifest timestamps is a pure function of the config
and the input bytes.
"""

from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import logging
import os
import re
import shutil
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .ingest import Corpus, CorpusFilter, WosParseError, filter_corpus, load_corpus, parse_years
from .keywords import load_synonyms, normalize
from .network import DISTANCE_TRANSFORMS, build_bipartite, project, to_distances
from .stats import (
    FieldKind,
    classify,
    cooccurring_with,
    focal_records,
    growth_ratio,
    keyword_frequencies,
    load_lexicon,
    multiword_containing,
    overlap_report,
    rank,
    ranked_csv,
    to_fixed,
    top_k,
)
from .topology import mst_to_dot, single_link_cluster, topology_report

logger = logging.getLogger(__name__)

ALL_AREAS = "all"


class PipelineError(Exception):
    """A stage failed; ``exit_code`` follows the CLI convention (2 input, 3 analysis)."""

    def __init__(self, stage: str, message: str, exit_code: int = 3):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.exit_code = exit_code


@dataclass
class PeriodSpec:
    label: str
    years: tuple[int, int]


@dataclass
class PipelineConfig:
    inputs: list[str]
    periods: list[PeriodSpec]
    out: str = "wosnet-out"
    areas: list[str] = field(default_factory=list)
    doc_types: list[str] = field(default_factory=lambda: ["Article"])
    focal: str = "complexity"
    field: str = "author"
    k: int = 15
    distance: str = "inverse"
    include_focal: bool = False
    network_period: str | None = None
    synonyms: str | None = None
    lexicon: str | None = None

    def __post_init__(self) -> None:
        self.periods = [p if isinstance(p, PeriodSpec) else _period(p) for p in self.periods]
        labels = [p.label for p in self.periods]
        if not 1 <= len(labels) <= 2:
            raise ValueError("one or two periods are supported")
        if len(set(labels)) != len(labels):
            raise ValueError(f"period labels must be distinct: {labels}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.distance not in DISTANCE_TRANSFORMS:
            raise ValueError(f"distance must be one of {DISTANCE_TRANSFORMS}")
        FieldKind(self.field)
        if normalize(self.focal) is None:
            raise ValueError("focal keyword is empty")
        if self.network_period is None:
            self.network_period = labels[-1]
        elif self.network_period not in labels:
            raise ValueError(f"network_period {self.network_period!r} is not a configured period")

    @classmethod
    def from_dict(cls, doc: dict) -> PipelineConfig:
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)

    @classmethod
    def from_file(cls, path: str | Path) -> PipelineConfig:
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["periods"] = [{"label": p.label, "years": f"{p.years[0]}-{p.years[1]}"} for p in self.periods]
        return doc

    def config_hash(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _period(raw) -> PeriodSpec:
    if isinstance(raw, str):
        return PeriodSpec(raw, parse_years(raw))
    years = raw["years"]
    pair = parse_years(years) if isinstance(years, str) else (int(years[0]), int(years[1]))
    return PeriodSpec(raw.get("label", f"{pair[0]}-{pair[1]}"), pair)


def slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-") or "area"


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _json(doc) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"


def _categories_csv(entries, lexicon) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["keyword", "category"])
    for kw, _ in entries:
        writer.writerow([kw.display, classify(kw, lexicon)])
    return buf.getvalue()


def analyze(config: PipelineConfig, corpus: Corpus, synonyms=None, lexicon=None) -> tuple[dict[str, str], list[str]]:
    """Compute every output file in memory; returns ``({relpath: text}, skipped)``."""
    field_kind = FieldKind(config.field)
    focal = normalize(config.focal, synonyms)
    files: dict[str, str] = {}
    skipped: list[str] = []

    period_corpora: dict[str, Corpus] = {}
    for period in config.periods:
        f = CorpusFilter(year_range=period.years, doc_types=frozenset(config.doc_types))
        sub = filter_corpus(corpus, f, period_label=period.label)
        if not len(sub):
            raise PipelineError("filter", f"empty corpus for period {period.label} after filtering")
        period_corpora[period.label] = sub

    areas = config.areas or [ALL_AREAS]
    for area in areas:
        area_dir = slug(area)
        tables = {}
        for period in config.periods:
            sub = period_corpora[period.label]
            if area != ALL_AREAS:
                sub = filter_corpus(sub, CorpusFilter(research_areas=frozenset([area])))
            base = f"{area_dir}/{period.label}"
            files[f"{base}/frequencies.csv"] = ranked_csv(rank(keyword_frequencies(sub, field_kind, synonyms)))
            table = cooccurring_with(sub, focal, field_kind, synonyms)
            tables[period.label] = (sub, table)
            files[f"{base}/cooccurrence.csv"] = ranked_csv(rank(table.counts))
            top = top_k(table, config.k)
            files[f"{base}/top{config.k}.csv"] = ranked_csv(top)
            focal_term = focal.canonical
            if " " not in focal_term:
                phrases = multiword_containing(table.counts, focal_term)
                files[f"{base}/multiword.csv"] = ranked_csv(rank({kw: table.counts[kw] for kw in phrases}))
            if lexicon is not None:
                files[f"{base}/categories.csv"] = _categories_csv(top, lexicon)

        if len(config.periods) == 2:
            early, late = (p.label for p in config.periods)
            (_, t_early), (_, t_late) = tables[early], tables[late]
            try:
                report = overlap_report(t_early.keywords(), t_late.keywords())
            except ValueError as exc:
                report = {"old_size": 0, "new_size": 0, "intersection": 0, "union": 0, "overlap_pct": None, "error": str(exc)}
            files[f"{area_dir}/overlap.json"] = _json({"area": area, "early": early, "late": late, **report})
            growth = {
                "area": area,
                "early": early,
                "late": late,
                "count_early": t_early.n_focal_papers,
                "count_late": t_late.n_focal_papers,
            }
            try:
                growth["f"] = to_fixed(growth_ratio(t_late.n_focal_papers, t_early.n_focal_papers))
            except ZeroDivisionError as exc:
                growth["f"] = None
                growth["error"] = str(exc)
            files[f"{area_dir}/growth.json"] = _json(growth)

        sub, table = tables[config.network_period]
        top = top_k(table, config.k)
        selection = top.keywords()
        if config.include_focal:
            selection = [focal] + selection
        if not selection:
            skipped.append(f"{area}/{config.network_period}: no keywords co-occur with {focal.canonical!r}")
            continue
        base = f"{area_dir}/{config.network_period}"
        try:
            bip = build_bipartite(focal_records(sub, focal, synonyms), selection, field_kind, synonyms)
            net = project(bip)
            forest, _ = single_link_cluster(to_distances(net, config.distance))
        except ValueError as exc:
            raise PipelineError("network", f"{area}/{config.network_period}: {exc}") from exc
        files[f"{base}/network.json"] = net.to_json()
        files[f"{base}/mst.dot"] = mst_to_dot(forest, net, name=f"{area} {config.network_period}")
        files[f"{base}/topology.json"] = topology_report(forest).to_json()
    return files, skipped


def _write_atomic(out: Path, files: dict[str, bytes]) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=f".{out.name}.tmp-", dir=out.parent))
    try:
        for rel, data in files.items():
            target = tmp / rel
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_bytes(data)
        if out.exists():
            old = Path(tempfile.mkdtemp(prefix=f".{out.name}.old-", dir=out.parent))
            os.replace(out, old / "prev")
            os.replace(tmp, out)
            shutil.rmtree(old, ignore_errors=True)
        else:
            os.replace(tmp, out)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise


def run_pipeline(config: PipelineConfig) -> dict:
    """Run every stage and write the output directory; returns the manifest."""
    started = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    try:
        synonyms = load_synonyms(config.synonyms) if config.synonyms else None
        lexicon = load_lexicon(config.lexicon) if config.lexicon else None
    except (OSError, ValueError) as exc:
        raise PipelineError("config", str(exc), exit_code=2) from exc

    inputs = []
    for path in config.inputs:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise PipelineError("parse", str(exc), exit_code=2) from exc
        inputs.append({"path": str(path), "bytes": len(data), "sha256": _sha256(data)})
    try:
        corpus, warnings = load_corpus(config.inputs)
    except (WosParseError, ValueError) as exc:
        raise PipelineError("parse", str(exc), exit_code=2) from exc
    for w in warnings:
        logger.warning(w)

    texts, skipped = analyze(config, corpus, synonyms, lexicon)
    files = {rel: texts[rel].encode("utf-8") for rel in sorted(texts)}
    manifest = {
        "tool": "wosnet",
        "version": __version__,
        "config_hash": config.config_hash(),
        "config": config.to_dict(),
        "inputs": inputs,
        "records_parsed": len(corpus),
        "warnings": len(warnings),
        "skipped": skipped,
        "started": started,
        "finished": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "outputs": [{"path": rel, "sha256": _sha256(data)} for rel, data in files.items()],
    }
    files["manifest.json"] = _json(manifest).encode("utf-8")
    _write_atomic(Path(config.out), files)
    return manifest

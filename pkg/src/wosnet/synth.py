"""Seeded synthetic WoS exports with planted, known co-occurrence counts.

The generator keeps its own lowercase keyword lists for every record and
derives the ground truth from them with plain loops, so the truth never
passes through the parser or the statistics code it is used to check.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

HEADER = "FN Clarivate Analytics Web of Science\nVR 1.0\n"
WRAP = 70

_VOCAB = [
    "Chaos", "Entropy", "Emergence", "Self-Organization", "Fractals", "Networks", "Algorithms",
    "Simulation", "Econophysics", "Innovation", "Sustainability", "Climate Change", "Biodiversity",
    "Aging", "EEG", "Leadership", "Convergence", "Cellular Automata", "Power Laws", "Volatility",
    "Computational Complexity", "Kolmogorov Complexity", "Linear Complexity", "Task Complexity",
    "Complexity Theory", "Complex Adaptive Systems", "Path Dependence", "Autopoiesis",
    "Stochastic Process", "Working Memory", "Financial Market", "Social Work",
]
_PLUS_VOCAB = [
    "COMPLEXITY THEORY", "HABITAT COMPLEXITY", "ECONOMIC COMPLEXITY", "TIME COMPLEXITY",
    "LOW COMPLEXITY", "DYNAMICS", "MODEL", "SYSTEMS", "BEHAVIOR", "NETWORKS", "EVOLUTION",
    "PERFORMANCE", "ORGANIZATION", "STATISTICAL COMPLEXITY", "DIVERSITY",
]


@dataclass(frozen=True)
class SynthSpec:
    """Knobs for :func:`generate_synthetic_corpus`.

    The planted pair is placed in ``planted_weight`` focal Article records of
    the planted group (last period, first area by default); each planted
    keyword also appears alone in ``planted_extra`` further focal records.
    With too few records the plant is partial; the ground truth always
    reports what was actually emitted.
    """

    focal: str = "Complexity"
    periods: tuple[tuple[int, int], ...] = ((2000, 2004), (2019, 2023))
    areas: tuple[str, ...] = ("Physics", "Economics", "Sociology")
    pool_size: int = 400
    keywords_per_record: tuple[int, int] = (2, 6)
    plus_per_record: tuple[int, int] = (0, 4)
    focal_rate: float = 0.4
    review_rate: float = 0.1
    outside_period_rate: float = 0.05
    planted_pair: tuple[str, str] | None = ("Agent-based Models", "Social Networks")
    planted_weight: int = 7
    planted_extra: int = 2
    planted_group: tuple[int, int] = (-1, 0)  # (period index, area index)
    wrap: int = WRAP


@dataclass
class _Rec:
    uid: str
    year: int
    area: str
    doc_type: str
    keywords: list[str]  # emitted surface forms
    plus: list[str] = field(default_factory=list)


def _period_label(period: tuple[int, int]) -> str:
    return f"{period[0]}-{period[1]}"


def _pool(size: int, exclude: set[str]) -> list[str]:
    words = [w for w in _VOCAB if w.lower() not in exclude]
    i = 0
    while len(words) < size:
        words.append(f"Topic {i:03d}")
        i += 1
    return words[:size]


def _surface(rng: random.Random, kw: str) -> str:
    roll = rng.random()
    if roll < 0.15:
        return kw.lower()
    if roll < 0.2:
        return kw.upper()
    return kw


def _wrapped(tag: str, items: list[str], width: int) -> list[str]:
    """Emit a ``;``-separated field, breaking only after ``"; "`` separators."""
    lines: list[str] = []
    current = ""
    for i, item in enumerate(items):
        piece = item + (";" if i < len(items) - 1 else "")
        if current and len(current) + 1 + len(piece) > width:
            lines.append(current)
            current = piece
        else:
            current = f"{current} {piece}" if current else piece
    lines.append(current)
    return [f"{tag} {lines[0]}"] + [f"   {line}" for line in lines[1:]]


def _emit(rec: _Rec, width: int) -> str:
    out = [
        "PT J",
        f"AU Author, {rec.uid[-3:]}",
        f"TI Synthetic study {rec.uid}",
        "SO JOURNAL OF SYNTHETIC RESULTS",
        f"DT {rec.doc_type}",
    ]
    if rec.keywords:
        out += _wrapped("DE", rec.keywords, width)
    if rec.plus:
        out += _wrapped("ID", rec.plus, width)
    out += [
        f"SC {rec.area}",
        f"WC {rec.area}, Multidisciplinary",
        f"PY {rec.year}",
        f"UT {rec.uid}",
        "ER",
        "",
    ]
    return "\n".join(out) + "\n"


def generate_synthetic_corpus(
    seed: int, n_records: int, spec: SynthSpec | None = None
) -> tuple[bytes, dict]:
    """Return ``(export_bytes, ground_truth)``; identical seeds give identical bytes."""
    if n_records < 1:
        raise ValueError("n_records must be >= 1")
    spec = spec or SynthSpec()
    rng = random.Random(seed)
    focal = spec.focal
    planted = list(spec.planted_pair or ())
    pool = _pool(spec.pool_size, {focal.lower(), *(p.lower() for p in planted)})

    records: list[_Rec] = []
    for i in range(n_records):
        uid = f"WOS:SYN{seed:04d}{i:08d}"
        if rng.random() < spec.outside_period_rate:
            year = rng.randint(2008, 2012)
        else:
            low, high = rng.choice(spec.periods)
            year = rng.randint(low, high)
        area = rng.choice(spec.areas)
        doc_type = "Review" if rng.random() < spec.review_rate else "Article"
        kws = rng.sample(pool, rng.randint(*spec.keywords_per_record))
        if rng.random() < spec.focal_rate:
            kws.insert(rng.randrange(len(kws) + 1), focal)
        surface = [_surface(rng, kw) for kw in kws]
        if surface and rng.random() < 0.05:
            surface.append(surface[0].lower())  # duplicate after normalization
        plus = rng.sample(_PLUS_VOCAB, rng.randint(*spec.plus_per_record))
        records.append(_Rec(uid, year, area, doc_type, surface, plus))

    if planted:
        _plant(records, rng, spec)

    text = HEADER + "".join(_emit(r, spec.wrap) for r in records) + "EF\n"
    return text.encode("utf-8"), _ground_truth(records, spec, seed)


def _in_group(rec: _Rec, period: tuple[int, int], area: str) -> bool:
    return period[0] <= rec.year <= period[1] and rec.area == area


def _has(rec: _Rec, kw: str) -> bool:
    return kw.lower() in {k.lower() for k in rec.keywords}


def _plant(records: list[_Rec], rng: random.Random, spec: SynthSpec) -> None:
    x, y = spec.planted_pair
    period = spec.periods[spec.planted_group[0]]
    area = spec.areas[spec.planted_group[1]]
    needed = spec.planted_weight + 2 * spec.planted_extra
    hosts = [
        r for r in records
        if _in_group(r, period, area) and r.doc_type == "Article" and _has(r, spec.focal)
    ]
    # recruit further records into the planted group; never changes the record count
    for rec in records:
        if len(hosts) >= needed:
            break
        if rec in hosts:
            continue
        rec.year = rng.randint(*period)
        rec.area = area
        rec.doc_type = "Article"
        if not _has(rec, spec.focal):
            rec.keywords.insert(0, spec.focal)
        hosts.append(rec)
    for j, rec in enumerate(hosts[:needed]):
        if j < spec.planted_weight:
            rec.keywords += [x, _surface(rng, y)]
        elif j < spec.planted_weight + spec.planted_extra:
            rec.keywords.append(x)
        else:
            rec.keywords.append(y)


def _ground_truth(records: list[_Rec], spec: SynthSpec, seed: int) -> dict:
    focal = spec.focal.lower()
    groups: dict[str, dict] = {}
    for period in spec.periods:
        label = _period_label(period)
        groups[label] = {}
        for area in spec.areas:
            members = [r for r in records if _in_group(r, period, area) and r.doc_type == "Article"]
            focal_sets = [
                {k.lower() for k in r.keywords} for r in members if _has(r, focal)
            ]
            groups[label][area] = {"articles": len(members), "n_focal_papers": len(focal_sets)}
    truth: dict = {
        "seed": seed,
        "n_records": len(records),
        "focal": focal,
        "doc_type": "Article",
        "groups": groups,
        "planted": None,
    }
    if spec.planted_pair:
        x, y = (p.lower() for p in spec.planted_pair)
        period = spec.periods[spec.planted_group[0]]
        area = spec.areas[spec.planted_group[1]]
        focal_sets = [
            {k.lower() for k in r.keywords}
            for r in records
            if _in_group(r, period, area) and r.doc_type == "Article" and _has(r, focal)
        ]
        pair_w = sum(1 for s in focal_sets if x in s and y in s)
        truth["planted"] = {
            "period": _period_label(period),
            "area": area,
            "pair": [x, y],
            "weight": pair_w,
            "cooccurrence": {x: sum(x in s for s in focal_sets), y: sum(y in s for s in focal_sets)},
        }
    return truth


def ground_truth_json(truth: dict) -> str:
    return json.dumps(truth, indent=1, sort_keys=True) + "\n"


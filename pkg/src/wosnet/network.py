"""Keyword-article bipartite networks, their one-mode projection, and distances."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .ingest import ArticleRecord, Corpus
from .keywords import CanonicalKeyword, SynonymMap, normalize
from .stats import FieldKind, RankedKeywords, record_keywords

DISTANCE_TRANSFORMS = ("inverse", "linear")


@dataclass(frozen=True)
class BipartiteNetwork:
    keyword_nodes: tuple[CanonicalKeyword, ...]
    article_nodes: tuple[str, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        n_kw, n_art = len(self.keyword_nodes), len(self.article_nodes)
        for k, a in self.edges:
            if not (0 <= k < n_kw and 0 <= a < n_art):
                raise ValueError(f"edge ({k}, {a}) does not join a keyword node to an article node")

    def incidence(self) -> np.ndarray:
        """Keyword x article 0/1 matrix."""
        m = np.zeros((len(self.keyword_nodes), len(self.article_nodes)), dtype=np.int64)
        if self.edges:
            k, a = np.array(sorted(self.edges)).T
            m[k, a] = 1
        return m

    def degree(self, keyword_index: int) -> int:
        return sum(1 for k, _ in self.edges if k == keyword_index)


@dataclass(frozen=True)
class ProjectedNetwork:
    """Keyword graph; ``weights`` maps ``(i, j)`` with ``i < j`` to shared-article counts."""

    nodes: tuple[CanonicalKeyword, ...]
    weights: dict[tuple[int, int], int]
    n_articles: int | None = None

    def __post_init__(self) -> None:
        n = len(self.nodes)
        for (i, j), w in self.weights.items():
            if not 0 <= i < j < n:
                raise ValueError(f"edge key ({i}, {j}) must satisfy 0 <= i < j < {n}")
            if w < 1 or (self.n_articles is not None and w > self.n_articles):
                raise ValueError(f"weight {w} on ({i}, {j}) outside [1, {self.n_articles}]")

    def weight(self, i: int, j: int) -> int:
        """Symmetric lookup; 0 when the pair is not linked."""
        if i > j:
            i, j = j, i
        return self.weights.get((i, j), 0)

    def matrix(self) -> np.ndarray:
        n = len(self.nodes)
        w = np.zeros((n, n), dtype=np.int64)
        for (i, j), value in self.weights.items():
            w[i, j] = w[j, i] = value
        return w

    def edge_list(self) -> list[tuple[int, int, int]]:
        return [(i, j, w) for (i, j), w in sorted(self.weights.items())]

    def to_json(self) -> str:
        doc = {
            "nodes": [kw.display for kw in self.nodes],
            "edges": [{"a": i, "b": j, "w": w} for i, j, w in self.edge_list()],
        }
        return json.dumps(doc, ensure_ascii=False, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str | bytes) -> ProjectedNetwork:
        doc = json.loads(text)
        nodes = []
        for raw in doc["nodes"]:
            kw = normalize(raw)
            if kw is None:
                raise ValueError("network JSON has an empty node label")
            nodes.append(kw)
        weights = {}
        for edge in doc["edges"]:
            a, b, w = int(edge["a"]), int(edge["b"]), int(edge["w"])
            if a >= b:
                raise ValueError(f"network JSON edge ({a}, {b}) must have a < b")
            weights[(a, b)] = w
        return cls(tuple(nodes), weights)


def build_bipartite(
    corpus: Corpus | Iterable[ArticleRecord],
    keywords: RankedKeywords | Sequence[CanonicalKeyword],
    field_kind: FieldKind | str = FieldKind.AUTHOR,
    synonyms: SynonymMap | None = None,
) -> BipartiteNetwork:
    """Link each selected keyword to the records whose keyword set contains it.

    Only records sharing at least one selected keyword become article nodes.
    Keyword order follows ``keywords``; article order follows the corpus.
    """
    kw_nodes = tuple(keywords.keywords() if isinstance(keywords, RankedKeywords) else keywords)
    if not kw_nodes:
        raise ValueError("keyword selection is empty")
    index = {kw: i for i, kw in enumerate(kw_nodes)}
    if len(index) != len(kw_nodes):
        raise ValueError("keyword selection has duplicates")
    articles: list[str] = []
    edges: set[tuple[int, int]] = set()
    for rec in corpus:
        hits = [index[kw] for kw in record_keywords(rec, field_kind, synonyms) if kw in index]
        if hits:
            a = len(articles)
            articles.append(rec.id)
            edges.update((k, a) for k in hits)
    return BipartiteNetwork(kw_nodes, tuple(articles), frozenset(edges))


def project(b: BipartiteNetwork) -> ProjectedNetwork:
    """One-mode projection onto keywords, weighted by shared article count."""
    inc = b.incidence()
    shared = inc @ inc.T
    rows, cols = np.nonzero(np.triu(shared, k=1))
    weights = {(int(i), int(j)): int(shared[i, j]) for i, j in zip(rows, cols)}
    return ProjectedNetwork(b.keyword_nodes, weights, len(b.article_nodes))


def to_distances(p: ProjectedNetwork, transform: str = "inverse") -> np.ndarray:
    """Distance matrix: ``1/w`` (default) or ``1 - w/max(w)`` on linked pairs.

    Unlinked pairs are ``inf`` and the diagonal is 0.
    """
    if transform not in DISTANCE_TRANSFORMS:
        raise ValueError(f"unknown distance transform {transform!r}")
    n = len(p.nodes)
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    if not p.weights:
        return d
    w_max = max(p.weights.values())
    for (i, j), w in p.weights.items():
        d[i, j] = d[j, i] = 1.0 / w if transform == "inverse" else 1.0 - w / w_max
    return d

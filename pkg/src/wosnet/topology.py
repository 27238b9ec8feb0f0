"""Single-link clustering, minimum spanning forests and tree shape coefficients.

Agglomerative nearest-neighbour clustering merges, at every step, the two
clusters whose closest members are nearest. The member pair realizing each
merge is a tree edge, so the merges of one connected component trace out its
minimum spanning tree and the merge heights are exactly the tree's edge
distances.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .network import ProjectedNetwork
from .stats import to_fixed

RATIO_NOTE = (
    "norm_diameter is d/(N-1); norm_diameter_alt is d/N. Published MST tables mix "
    "both denominators, so compare against whichever matches."
)


@dataclass(frozen=True)
class MergeStep:
    cluster_a: int
    cluster_b: int
    distance: float
    size: int


@dataclass(frozen=True)
class TreeComponent:
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int, float], ...]

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.nodes}
        for p, q, _ in self.edges:
            adj[p].append(q)
            adj[q].append(p)
        return adj

    def total_distance(self) -> float:
        return sum(d for _, _, d in self.edges)


@dataclass(frozen=True)
class SpanningForest:
    components: tuple[TreeComponent, ...]

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return [e for comp in self.components for e in comp.edges]

    def component_of(self, node: int) -> int:
        for cid, comp in enumerate(self.components):
            if node in comp.nodes:
                return cid
        raise KeyError(node)

    def largest(self) -> TreeComponent:
        # ties go to the component holding the smallest node index
        return max(self.components, key=lambda c: (len(c.nodes), -c.nodes[0]))

    def total_distance(self) -> float:
        return sum(c.total_distance() for c in self.components)


@dataclass(frozen=True)
class Dendrogram:
    """Merge steps in order; cluster ids follow the usual linkage convention
    (leaves ``0..n-1``, the cluster formed at step ``k`` gets id ``n + k``)."""

    n_leaves: int
    steps: tuple[MergeStep, ...]

    def heights(self) -> list[float]:
        return [s.distance for s in self.steps]


def _check_distances(D) -> np.ndarray:
    D = np.asarray(D, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError("distance matrix must be square")
    if np.isnan(D).any():
        raise ValueError("distance matrix contains NaN")
    if (D < 0).any():
        raise ValueError("distances must be non-negative")
    if not np.array_equal(D, D.T):
        raise ValueError("distance matrix must be symmetric")
    if np.any(np.diag(D) != 0):
        raise ValueError("distance matrix must have a zero diagonal")
    return D


def single_link_cluster(D) -> tuple[SpanningForest, Dendrogram]:
    """Nearest-neighbour agglomeration over a distance matrix.

    Infinite distances are never merged, so each connected component yields
    its own tree. Among equally near cluster pairs the one realized by the
    lexicographically smallest node pair ``(min, max)`` is merged first.
    """
    D = _check_distances(D)
    n = D.shape[0]
    # C[r, s]: single-link distance between the clusters held in rows r and s
    # P[r, s]: node pair realizing it, coded lo * n + hi
    C = D.copy()
    np.fill_diagonal(C, np.inf)
    idx = np.arange(n, dtype=np.int64)
    P = np.minimum.outer(idx, idx) * n + np.maximum.outer(idx, idx)
    sentinel = np.int64(n * n)
    cluster_id = list(range(n))
    size = [1] * n
    steps: list[MergeStep] = []
    tree_edges: list[tuple[int, int, float]] = []

    for _ in range(n - 1):
        v = C.min()
        if not np.isfinite(v):
            break
        codes = np.where(C == v, P, sentinel)
        r, s = divmod(int(codes.argmin()), n)
        p, q = divmod(int(P[r, s]), n)
        tree_edges.append((p, q, float(v)))
        size[r] += size[s]
        steps.append(MergeStep(cluster_id[r], cluster_id[s], float(v), size[r]))
        cluster_id[r] = n + len(steps) - 1

        row_r, row_s = C[r], C[s]
        take_s = (row_s < row_r) | ((row_s == row_r) & (P[s] < P[r]))
        new_c = np.where(take_s, row_s, row_r)
        new_p = np.where(take_s, P[s], P[r])
        C[r, :] = new_c
        C[:, r] = new_c
        P[r, :] = new_p
        P[:, r] = new_p
        C[r, r] = np.inf
        C[s, :] = np.inf
        C[:, s] = np.inf

    return _forest(n, tree_edges), Dendrogram(n, tuple(steps))


def _forest(n: int, edges: list[tuple[int, int, float]]) -> SpanningForest:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, q, _ in edges:
        a, b = find(p), find(q)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    edge_groups: dict[int, list[tuple[int, int, float]]] = {}
    for e in edges:
        edge_groups.setdefault(find(e[0]), []).append(e)
    comps = [
        TreeComponent(tuple(members), tuple(edge_groups.get(root, ())))
        for root, members in sorted(groups.items(), key=lambda kv: kv[1][0])
    ]
    return SpanningForest(tuple(comps))


def minimum_spanning_forest(D) -> SpanningForest:
    return single_link_cluster(D)[0]


# --- shape coefficients -----------------------------------------------------


def _as_component(tree) -> TreeComponent:
    if isinstance(tree, TreeComponent):
        return tree
    nodes, edges = tree
    edges = tuple((e[0], e[1], e[2] if len(e) > 2 else 1.0) for e in edges)
    return TreeComponent(tuple(nodes), edges)


def _bfs_far(adj: dict[int, list[int]], start: int) -> tuple[int, int]:
    dist = {start: 0}
    queue = deque([start])
    far = start
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                if dist[w] > dist[far] or (dist[w] == dist[far] and w < far):
                    far = w
                queue.append(w)
    return far, dist[far]


def diameter(tree: TreeComponent | tuple[Sequence[int], Sequence[tuple]]) -> int:
    """Longest shortest path, in hops, between two nodes of a tree."""
    comp = _as_component(tree)
    if not comp.nodes:
        raise ValueError("empty tree")
    adj = comp.adjacency()
    end, _ = _bfs_far(adj, comp.nodes[0])
    _, d = _bfs_far(adj, end)
    return d


@dataclass(frozen=True)
class LeafCount:
    leaves: int
    branches: int
    degenerate: bool = False

    def __iter__(self):
        return iter((self.leaves, self.branches))


def leaves_branches(tree: TreeComponent | tuple[Sequence[int], Sequence[tuple]]) -> LeafCount:
    """Degree-one nodes (leaves) and higher-degree nodes (branches)."""
    comp = _as_component(tree)
    if len(comp.nodes) < 2:
        return LeafCount(0, 0, degenerate=True)
    degrees = [len(nbrs) for nbrs in comp.adjacency().values()]
    leaves = sum(1 for deg in degrees if deg == 1)
    return LeafCount(leaves, len(degrees) - leaves)


@dataclass(frozen=True)
class TopologyReport:
    """MST shape summary of the largest component.

    Ratios are exact fractions, ``None`` when the tree has fewer than three
    nodes. ``norm_diameter`` is d/(N-1), ``norm_diameter_alt`` is d/N and
    ``shape_gap`` is |d-l|/N; see ``RATIO_NOTE`` on the two denominators.
    """

    N: int
    d: int
    l: int
    b: int
    norm_diameter: Fraction | None
    norm_diameter_alt: Fraction | None
    shape_gap: Fraction | None
    component_count: int

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "d": self.d,
            "l": self.l,
            "b": self.b,
            "norm_diameter": to_fixed(self.norm_diameter),
            "norm_diameter_alt": to_fixed(self.norm_diameter_alt),
            "shape_gap": to_fixed(self.shape_gap),
            "component_count": self.component_count,
            "note": RATIO_NOTE,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def shape_ratios(N: int, d: int, l: int) -> tuple[Fraction | None, Fraction | None, Fraction | None]:
    if N < 3:
        return None, None, None
    return Fraction(d, N - 1), Fraction(d, N), Fraction(abs(d - l), N)


def tree_report(tree, component_count: int = 1) -> TopologyReport:
    comp = _as_component(tree)
    N = len(comp.nodes)
    d = diameter(comp) if N else 0
    l, b = leaves_branches(comp)
    return TopologyReport(N, d, l, b, *shape_ratios(N, d, l), component_count)


def topology_report(forest: SpanningForest) -> TopologyReport:
    if not forest.components:
        return TopologyReport(0, 0, 0, 0, None, None, None, 0)
    return tree_report(forest.largest(), len(forest.components))


# --- DOT --------------------------------------------------------------------


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def mst_to_dot(forest: SpanningForest, network: ProjectedNetwork, name: str = "mst") -> str:
    """Undirected DOT graph of the forest with weight and distance per edge."""
    lines = [f"graph {_dot_quote(name)} {{"]
    for i, kw in enumerate(network.nodes):
        lines.append(f"  n{i} [label={_dot_quote(kw.display)}];")
    for p, q, dist in sorted((min(p, q), max(p, q), dist) for p, q, dist in forest.edges):
        lines.append(f"  n{p} -- n{q} [weight={network.weight(p, q)}, len={dist!r}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

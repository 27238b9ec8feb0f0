import json
import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import pairwise_shared
from wosnet.ingest import ArticleRecord
from wosnet.keywords import keyword
from wosnet.network import BipartiteNetwork, ProjectedNetwork, build_bipartite, project, to_distances
from wosnet.stats import cooccurring_with, top_k


def rec(rid, *kws):
    return ArticleRecord(rid, author_keywords=tuple(kws))


def kws(*words):
    return [keyword(w) for w in words]


def test_bipartite_without_matches():
    b = build_bipartite([rec("1", "y")], kws("x"))
    assert len(b.keyword_nodes) == 1 and b.article_nodes == () and b.edges == frozenset()


def test_bipartite_single_record():
    b = build_bipartite([rec("1", "x", "Y")], kws("x", "y"))
    assert b.article_nodes == ("1",)
    assert b.edges == {(0, 0), (1, 0)}


def test_bipartite_six_record_fixture():
    records = [
        rec("1", "a", "b"),
        rec("2", "c"),
        rec("3", "B", "c", "d"),
        rec("4", "e"),
        rec("5", "a", "d", "a"),
        rec("6", "d"),
    ]
    selection = kws("d", "a", "b")
    b = build_bipartite(records, selection)
    # membership-test oracle, articles in corpus order
    arts = [r for r in records if any(k in {x.lower() for x in r.author_keywords} for k in ("a", "b", "d"))]
    expected = {
        (ki, ai)
        for ai, r in enumerate(arts)
        for ki, k in enumerate(["d", "a", "b"])
        if k in {x.lower() for x in r.author_keywords}
    }
    assert b.article_nodes == tuple(r.id for r in arts) == ("1", "3", "5", "6")
    assert b.edges == expected
    assert [k.canonical for k in b.keyword_nodes] == ["d", "a", "b"]


def test_bipartite_rejects_empty_selection():
    with pytest.raises(ValueError):
        build_bipartite([rec("1", "x")], [])


def test_bipartite_edges_cross_partitions():
    with pytest.raises(ValueError):
        BipartiteNetwork(tuple(kws("x")), ("1",), frozenset({(0, 1)}))


def test_projection_single_article():
    p = project(build_bipartite([rec("1", "x", "y")], kws("x", "y")))
    assert p.weights == {(0, 1): 1}


def test_projection_no_shared_article():
    p = project(build_bipartite([rec("1", "x"), rec("2", "y")], kws("x", "y")))
    assert p.weights == {}


def random_bipartite(rng, n_art, n_kw, p=0.25):
    sets = [{k for k in range(n_kw) if rng.random() < p} for _ in range(n_art)]
    sets = [s for s in sets if s]
    edges = frozenset((k, a) for a, s in enumerate(sets) for k in s)
    nodes = tuple(keyword(f"k{i}") for i in range(n_kw))
    return BipartiteNetwork(nodes, tuple(str(a) for a in range(len(sets))), edges), sets


def test_projection_random_instance_matches_brute_force():
    rng = random.Random(11)
    b, sets = random_bipartite(rng, 50, 10)
    assert project(b).weights == pairwise_shared(sets, 10)


@given(st.integers(0, 2**32 - 1), st.integers(1, 200), st.integers(1, 50))
def test_projection_properties(seed, n_art, n_kw):
    rng = random.Random(seed)
    b, sets = random_bipartite(rng, n_art, n_kw, p=rng.uniform(0.02, 0.5))
    p = project(b)
    assert p.weights == pairwise_shared(sets, n_kw)
    for (i, j), w in p.weights.items():
        assert p.weight(j, i) == w
        assert 1 <= w <= min(b.degree(i), b.degree(j)) <= len(b.article_nodes)


def test_projection_via_corpus_pipeline(fixture_corpus):
    table = cooccurring_with(fixture_corpus, "complexity")
    top = top_k(table, 5)
    p = project(build_bipartite(fixture_corpus, top))
    labels = [k.canonical for k in p.nodes]
    assert labels == [k.canonical for k in top.keywords()]
    sets = [{labels.index(k.lower()) for k in r.author_keywords if k.lower() in labels} for r in fixture_corpus]
    assert p.weights == pairwise_shared(sets, len(labels))


def test_distances_inverse():
    p = ProjectedNetwork(tuple(kws("a", "b", "c")), {(0, 1): 1, (1, 2): 4})
    d = to_distances(p)
    assert d[0, 1] == 1.0 and d[2, 1] == 0.25
    assert math.isinf(d[0, 2])
    assert np.all(np.diag(d) == 0)


def test_distances_linear():
    p = ProjectedNetwork(tuple(kws("a", "b", "c")), {(0, 1): 1, (1, 2): 4})
    d = to_distances(p, "linear")
    assert d[0, 1] == 0.75 and d[1, 2] == 0.0 and math.isinf(d[0, 2])
    with pytest.raises(ValueError):
        to_distances(p, "log")


@given(st.integers(0, 2**32 - 1))
def test_distances_reverse_weight_order(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 12)
    weights = {(i, j): rng.randint(1, 9) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.6}
    p = ProjectedNetwork(tuple(keyword(f"k{i}") for i in range(n)), weights)
    d = to_distances(p)
    assert np.array_equal(d, d.T)
    items = list(weights.items())
    for (e1, w1) in items:
        for (e2, w2) in items:
            if w1 > w2:
                assert d[e1] < d[e2]
            elif w1 == w2:
                assert d[e1] == d[e2]
    for i in range(n):
        for j in range(i + 1, n):
            assert np.isfinite(d[i, j]) == ((i, j) in weights)


def test_network_json_round_trip():
    p = ProjectedNetwork(tuple(kws("Chaos", "Entropy", "EEG")), {(1, 2): 3, (0, 2): 1})
    text = p.to_json()
    doc = json.loads(text)
    assert list(doc) == ["nodes", "edges"]
    assert doc["edges"] == [{"a": 0, "b": 2, "w": 1}, {"a": 1, "b": 2, "w": 3}]
    back = ProjectedNetwork.from_json(text)
    assert back.nodes == p.nodes and back.weights == p.weights


def test_projected_invariants():
    with pytest.raises(ValueError):
        ProjectedNetwork(tuple(kws("a", "b")), {(1, 0): 1})
    with pytest.raises(ValueError):
        ProjectedNetwork(tuple(kws("a", "b")), {(0, 1): 3}, n_articles=2)

from wosnet.ingest import Corpus, CorpusFilter, filter_corpus, parse_export
from wosnet.network import build_bipartite, project
from wosnet.stats import cooccurring_with, focal_records, top_k
from wosnet.synth import SynthSpec, generate_synthetic_corpus


def test_small_corpus_is_well_formed():
    data, truth = generate_synthetic_corpus(1, 10)
    text = data.decode("utf-8")
    assert text.count("\nER\n") == 10
    records, warnings = parse_export(data)
    assert len(records) == 10 and warnings == []
    assert truth["n_records"] == 10


def test_same_seed_same_bytes():
    assert generate_synthetic_corpus(5, 300)[0] == generate_synthetic_corpus(5, 300)[0]
    assert generate_synthetic_corpus(5, 300)[0] != generate_synthetic_corpus(6, 300)[0]


def test_long_fields_wrap_onto_continuation_lines():
    data, _ = generate_synthetic_corpus(2, 200)
    lines = data.decode("utf-8").splitlines()
    assert any(line.startswith("   ") for line in lines)
    assert max(len(line) for line in lines if line[:3] in ("DE ", "ID ", "   ")) <= 80


def test_planted_truth_matches_library():
    spec = SynthSpec()
    data, truth = generate_synthetic_corpus(3, 1500, spec)
    records, _ = parse_export(data)
    planted = truth["planted"]
    a, b = planted["period"].split("-")
    sub = filter_corpus(
        Corpus(tuple(records)),
        CorpusFilter(year_range=(int(a), int(b)), doc_types=frozenset({"Article"}),
                     research_areas=frozenset({planted["area"]})),
    )
    table = cooccurring_with(sub, "complexity")
    counts = {k.canonical: v for k, v in table.counts.items()}
    for kw, n in planted["cooccurrence"].items():
        assert counts[kw] == n
    assert planted["weight"] == spec.planted_weight
    assert table.n_focal_papers == truth["groups"][planted["period"]][planted["area"]]["n_focal_papers"]
    top = top_k(table, 15)
    net = project(build_bipartite(focal_records(sub, "complexity"), top))
    labels = [k.canonical for k in net.nodes]
    x, y = planted["pair"]
    assert net.weight(labels.index(x), labels.index(y)) == planted["weight"]


def test_tiny_corpus_still_honours_record_count():
    data, truth = generate_synthetic_corpus(9, 3)
    records, _ = parse_export(data)
    assert len(records) == truth["n_records"] == 3
    assert truth["planted"]["weight"] <= 3

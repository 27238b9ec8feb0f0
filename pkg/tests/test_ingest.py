import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import wos_block
from wosnet.ingest import (
    ArticleRecord,
    Corpus,
    CorpusFilter,
    SchemaError,
    WosParseError,
    deserialize_corpus,
    filter_corpus,
    load_corpus,
    parse_export,
    parse_years,
    serialize_corpus,
)
from wosnet.keywords import keyword


def reference_parse(text: str) -> list[dict]:
    """Independent regex-based reader used as an oracle for the fixture."""
    out = []
    for block in re.findall(r"^PT .*?^ER\s*$", text, flags=re.M | re.S):
        fields: dict[str, str] = {}
        tag = None
        for line in block.splitlines():
            m = re.match(r"^([A-Z][A-Z0-9]) (.*)$", line)
            if m:
                tag = m.group(1)
                fields[tag] = m.group(2).strip()
            elif line.startswith("   ") and tag:
                fields[tag] += " " + line.strip()
        split = lambda key: [s.strip() for s in fields.get(key, "").split(";") if s.strip()]
        out.append(
            {
                "id": fields["UT"],
                "pub_year": int(fields["PY"]),
                "doc_type": fields["DT"],
                "author_keywords": split("DE"),
                "keywords_plus": split("ID"),
                "research_areas": split("SC"),
                "wos_categories": split("WC"),
            }
        )
    return out


def test_simple_de_line():
    recs, warns = parse_export(wos_block(PT="J", DE="Complexity; Chaos", UT="WOS:1"))
    assert recs[0].author_keywords == ("Complexity", "Chaos")
    assert warns == []


def test_absent_de_gives_empty_list():
    recs, _ = parse_export(wos_block(PT="J", TI="x", UT="WOS:1"))
    assert recs[0].author_keywords == ()
    assert recs[0].pub_year is None


def test_continuation_line_joins_with_single_space(fixture_corpus):
    assert fixture_corpus.records[0].author_keywords == ("Complexity", "Agent-based models")
    assert fixture_corpus.records[0].title == "Complexity and chaos in markets"


def test_fixture_matches_reference_parser(fixture_bytes, fixture_corpus):
    expected = reference_parse(fixture_bytes.decode("utf-8"))
    assert len(expected) == len(fixture_corpus) == 10
    for ref, rec in zip(expected, fixture_corpus.records):
        for key, value in ref.items():
            got = getattr(rec, key)
            assert (list(got) if isinstance(got, tuple) else got) == value, (rec.id, key)


def test_missing_ut_gets_synthetic_id():
    text = wos_block(PT="J", TI="a") + wos_block(PT="J", TI="b", UT="WOS:2")
    recs, warns = parse_export(text, source="f.txt")
    assert recs[0].id == "gen:f.txt:1"
    assert recs[1].id == "WOS:2"
    assert any("missing UT" in w for w in warns)


def test_unknown_tag_is_ignored_with_warning():
    text = wos_block(PT="J", AB="An abstract", UT="WOS:1").replace(
        "AB An abstract", "AB An abstract\n   spanning lines"
    )
    recs, warns = parse_export(text)
    assert len(recs) == 1
    assert len(warns) == 1 and "'AB'" in warns[0]


def test_missing_er_is_hard_error():
    with pytest.raises(WosParseError, match="no ER"):
        parse_export("PT J\nUT WOS:1\n")
    with pytest.raises(WosParseError):
        parse_export("PT J\nUT WOS:1\nEF\n")


def test_undecodable_input_is_hard_error():
    with pytest.raises(WosParseError, match="UTF-8"):
        parse_export(b"PT J\nTI \xff\xfe\nER\n")


def test_bom_is_skipped():
    recs, warns = parse_export(b"\xef\xbb\xbf" + wos_block(PT="J", UT="WOS:1").encode())
    assert recs[0].id == "WOS:1" and warns == []


def test_bad_year_becomes_unknown():
    recs, warns = parse_export(wos_block(PT="J", PY="20x1", UT="WOS:1"))
    assert recs[0].pub_year is None
    assert warns


def test_concatenation_equals_sequential_parse(fixture_bytes):
    a, _ = parse_export(fixture_bytes)
    other = fixture_bytes.replace(b"WOS:0000", b"WOS:9999")
    b, _ = parse_export(other)
    both, _ = parse_export(fixture_bytes + other)
    assert both == a + b


def test_load_corpus_keeps_argument_order_and_drops_duplicates(tmp_path, fixture_bytes):
    p1, p2 = tmp_path / "a.txt", tmp_path / "b.txt"
    p1.write_bytes(fixture_bytes)
    p2.write_text(wos_block(PT="J", UT="WOS:000000000000001") + wos_block(PT="J", UT="WOS:new"))
    corpus, warns = load_corpus([p1, p2])
    assert [r.id for r in corpus][-1] == "WOS:new"
    assert len(corpus) == 11
    assert any("duplicate" in w for w in warns)
    assert corpus.provenance == ("file:a.txt", "file:b.txt")


def test_record_invariants():
    with pytest.raises(ValueError):
        ArticleRecord("")
    with pytest.raises(ValueError):
        ArticleRecord("x", pub_year=1800)
    with pytest.raises(ValueError):
        ArticleRecord("x", author_keywords=(" a",))
    with pytest.raises(ValueError):
        Corpus((ArticleRecord("x"), ArticleRecord("x")))


# --- filtering ---------------------------------------------------------------


def test_year_filter_excludes_out_of_range():
    corpus = Corpus((ArticleRecord("a", pub_year=2001),))
    assert len(filter_corpus(corpus, CorpusFilter(year_range=(2019, 2023)))) == 0


def test_year_filter_excludes_unknown_year():
    corpus = Corpus((ArticleRecord("a"),))
    assert len(filter_corpus(corpus, CorpusFilter(year_range=(1900, 2100)))) == 0


def test_area_filter_is_case_insensitive():
    corpus = Corpus((ArticleRecord("a", research_areas=("Physics",)),))
    assert len(filter_corpus(corpus, CorpusFilter(research_areas=frozenset({"physics"})))) == 1


def test_doc_type_filter_on_fixture(fixture_corpus):
    # hand count: records 2, 6 and 9 are reviews
    kept = filter_corpus(fixture_corpus, CorpusFilter(doc_types=frozenset({"Article"})))
    assert len(kept) == 7
    assert [r.id[-2:] for r in kept] == ["01", "03", "04", "05", "07", "08", "10"]


def test_combined_filter_on_fixture(fixture_corpus):
    f = CorpusFilter(
        year_range=(2019, 2023),
        doc_types=frozenset({"article"}),
        research_areas=frozenset({"PHYSICS", "Sociology"}),
        require_author_keyword=keyword("Complexity"),
    )
    kept = filter_corpus(fixture_corpus, f)
    assert [r.id[-2:] for r in kept] == ["07", "08"]
    assert kept.provenance[-1].startswith("filter(")


def test_filter_inverted_years_rejected():
    with pytest.raises(ValueError):
        CorpusFilter(year_range=(2005, 2000))


def test_parse_years():
    assert parse_years("2000-2004") == (2000, 2004)
    assert parse_years("2010") == (2010, 2010)
    with pytest.raises(ValueError):
        parse_years("20-x")


records_st = st.builds(
    ArticleRecord,
    id=st.uuids().map(str),
    pub_year=st.one_of(st.none(), st.integers(1990, 2025)),
    doc_type=st.sampled_from(["Article", "Review", "Article; Proceedings Paper"]),
    research_areas=st.lists(st.sampled_from(["Physics", "Economics", "Sociology"]), max_size=2).map(tuple),
    author_keywords=st.lists(st.sampled_from(["Complexity", "chaos", "Entropy"]), max_size=3).map(tuple),
)
corpora_st = st.lists(records_st, max_size=20, unique_by=lambda r: r.id).map(lambda rs: Corpus(tuple(rs)))
filters_st = st.builds(
    CorpusFilter,
    year_range=st.one_of(st.none(), st.tuples(st.integers(1990, 2005), st.integers(2005, 2025))),
    doc_types=st.frozensets(st.sampled_from(["Article", "review"]), max_size=2),
    research_areas=st.frozensets(st.sampled_from(["physics", "Economics"]), max_size=2),
    require_author_keyword=st.one_of(st.none(), st.just(keyword("complexity"))),
)


@given(corpora_st, filters_st)
def test_filter_is_idempotent(corpus, f):
    once = filter_corpus(corpus, f)
    assert filter_corpus(once, f).records == once.records


@given(corpora_st)
def test_permissive_filter_is_identity(corpus):
    assert filter_corpus(corpus, CorpusFilter()).records == corpus.records


@given(corpora_st, filters_st)
def test_filter_preserves_order(corpus, f):
    ids = [r.id for r in corpus]
    kept = [r.id for r in filter_corpus(corpus, f)]
    assert kept == [i for i in ids if i in set(kept)]


# --- JSON round trip -----------------------------------------------------------


def test_empty_corpus_round_trip():
    c = Corpus()
    assert deserialize_corpus(serialize_corpus(c)) == c


def test_single_record_round_trip(fixture_corpus):
    c = Corpus(fixture_corpus.records[:1], ("file:x",), "2000-2004")
    back = deserialize_corpus(serialize_corpus(c))
    assert back == c
    assert back.records[0] == fixture_corpus.records[0]


def test_json_key_order_and_newline(fixture_corpus):
    data = serialize_corpus(fixture_corpus)
    assert data.endswith(b"\n")
    text = data.decode("utf-8")
    assert text.index('"period"') < text.index('"provenance"') < text.index('"records"')
    rec = text[text.index('"records"'):]
    keys = ["id", "title", "source", "pub_year", "doc_type", "author_keywords",
            "keywords_plus", "research_areas", "wos_categories"]
    positions = [rec.index(f'"{k}"') for k in keys]
    assert positions == sorted(positions)


@given(corpora_st)
def test_round_trip_property(corpus):
    assert deserialize_corpus(serialize_corpus(corpus)) == corpus


@pytest.mark.parametrize(
    "doc, path",
    [
        ('{"period": "", "provenance": [], "records": [{}]}', "$.records[0]"),
        ('{"period": 3, "provenance": [], "records": []}', "$.period"),
        ('{"period": "", "provenance": [1], "records": []}', "$.provenance[0]"),
        ('[]', "$"),
    ],
)
def test_schema_errors_name_the_path(doc, path):
    with pytest.raises(SchemaError) as info:
        deserialize_corpus(doc)
    assert info.value.path == path


def test_schema_error_on_bad_keyword_list():
    good = serialize_corpus(Corpus((ArticleRecord("a", author_keywords=("x",)),))).decode()
    bad = good.replace('"x"', "7")
    with pytest.raises(SchemaError) as info:
        deserialize_corpus(bad)
    assert info.value.path == "$.records[0].author_keywords[0]"

"""Keyword co-occurrence networks and MST topology from Web of Science exports."""

__version__ = "0.1.0"

from .ingest import (
    ArticleRecord,
    Corpus,
    CorpusFilter,
    SchemaError,
    WosParseError,
    deserialize_corpus,
    filter_corpus,
    load_corpus,
    parse_export,
    serialize_corpus,
)
from .keywords import CanonicalKeyword, author_keyword_set, keyword, keywords_plus_set, normalize
from .network import BipartiteNetwork, ProjectedNetwork, build_bipartite, project, to_distances
from .stats import (
    CooccurrenceTable,
    FieldKind,
    RankedKeywords,
    classify,
    cooccurring_with,
    default_lexicon,
    growth_ratio,
    keyword_frequencies,
    multiword_containing,
    overlap,
    top_k,
)
from .synth import SynthSpec, generate_synthetic_corpus
from .topology import (
    Dendrogram,
    SpanningForest,
    TopologyReport,
    diameter,
    leaves_branches,
    single_link_cluster,
    topology_report,
)

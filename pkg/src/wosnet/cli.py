"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 analysis error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .ingest import (
    CorpusFilter,
    SchemaError,
    WosParseError,
    filter_corpus,
    parse_years,
    read_any,
    serialize_corpus,
)
from .keywords import load_synonyms, normalize
from .network import DISTANCE_TRANSFORMS, ProjectedNetwork, build_bipartite, project, to_distances
from .pipeline import PipelineConfig, PipelineError, run_pipeline
from .stats import (
    FieldKind,
    cooccurring_with,
    focal_records,
    growth_ratio,
    keyword_frequencies,
    overlap_report,
    rank,
    ranked_csv,
    read_ranked_csv,
    to_fixed,
    top_k,
)
from .synth import SynthSpec, generate_synthetic_corpus, ground_truth_json
from .topology import mst_to_dot, single_link_cluster, topology_report

logger = logging.getLogger("wosnet")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_ANALYSIS = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str | bytes, out: str | None) -> None:
    data = text.encode("utf-8") if isinstance(text, str) else text
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _load(paths):
    corpus, warnings = read_any(paths)
    for w in warnings:
        logger.warning(w)
    return corpus


def _synonyms(args):
    return load_synonyms(args.synonyms) if getattr(args, "synonyms", None) else None


def _focal(args, synonyms):
    kw = normalize(args.focal, synonyms)
    if kw is None:
        raise UsageError("--focal must be non-empty")
    return kw


def _single_input(args) -> str:
    if len(args.input) != 1:
        raise UsageError("exactly one --input expected")
    return args.input[0]


def cmd_parse(args) -> int:
    _emit(serialize_corpus(_load(args.input)), args.out)
    return EXIT_OK


def cmd_filter(args) -> int:
    corpus = _load(args.input)
    years = parse_years(args.years) if args.years else None
    f = CorpusFilter(
        year_range=years,
        doc_types=frozenset(args.doc_type or ()),
        research_areas=frozenset(args.area or ()),
        require_author_keyword=normalize(args.focal) if args.focal else None,
    )
    label = args.years if args.years else None
    _emit(serialize_corpus(filter_corpus(corpus, f, period_label=label)), args.out)
    return EXIT_OK


def cmd_freq(args) -> int:
    counts = keyword_frequencies(_load(args.input), args.field, _synonyms(args))
    entries = rank(counts)
    _emit(ranked_csv(entries[: args.k] if args.k else entries), args.out)
    return EXIT_OK


def cmd_cooccur(args) -> int:
    syn = _synonyms(args)
    table = cooccurring_with(_load(args.input), _focal(args, syn), args.field, syn)
    _emit(ranked_csv(rank(table.counts)), args.out)
    return EXIT_OK


def cmd_topk(args) -> int:
    syn = _synonyms(args)
    table = cooccurring_with(_load(args.input), _focal(args, syn), args.field, syn)
    _emit(ranked_csv(top_k(table, args.k or 15)), args.out)
    return EXIT_OK


def _keyword_set(path: str, args, syn) -> set:
    if path.lower().endswith(".csv"):
        return {kw for kw, _ in read_ranked_csv(path)}
    return cooccurring_with(_load([path]), _focal(args, syn), args.field, syn).keywords()


def cmd_overlap(args) -> int:
    if len(args.input) != 2:
        raise UsageError("overlap needs two --input values: early then late")
    syn = _synonyms(args)
    old, new = (_keyword_set(p, args, syn) for p in args.input)
    _emit(json.dumps(overlap_report(old, new), indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_ratio(args) -> int:
    if len(args.input) != 2:
        raise UsageError("ratio needs two --input values: early then late")
    syn = _synonyms(args)
    focal = _focal(args, syn)
    early, late = (len(focal_records(_load([p]), focal, syn)) for p in args.input)
    doc = {"count_early": early, "count_late": late, "f": to_fixed(growth_ratio(late, early))}
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    return EXIT_OK


def cmd_network(args) -> int:
    syn = _synonyms(args)
    focal = _focal(args, syn)
    corpus = _load(args.input)
    table = cooccurring_with(corpus, focal, args.field, syn)
    selection = top_k(table, args.k or 15).keywords()
    if args.include_focal:
        selection = [focal] + selection
    if not selection:
        raise ValueError(f"no keywords co-occur with {focal.canonical!r}")
    bip = build_bipartite(focal_records(corpus, focal, syn), selection, args.field, syn)
    _emit(project(bip).to_json(), args.out)
    return EXIT_OK


def _network_forest(args):
    try:
        net = ProjectedNetwork.from_json(Path(_single_input(args)).read_bytes())
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad network JSON: {exc}") from exc
    forest, _ = single_link_cluster(to_distances(net, args.distance))
    return net, forest


def cmd_mst(args) -> int:
    net, forest = _network_forest(args)
    _emit(mst_to_dot(forest, net), args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    _, forest = _network_forest(args)
    _emit(topology_report(forest).to_json(), args.out)
    return EXIT_OK


def cmd_pipeline(args) -> int:
    doc = json.loads(Path(args.config).read_text(encoding="utf-8")) if args.config else {}
    # flags win over the config file
    if args.input:
        doc["inputs"] = args.input
    if args.years:
        doc["periods"] = args.years
    if args.area:
        doc["areas"] = args.area
    if args.doc_type:
        doc["doc_types"] = args.doc_type
    for key in ("out", "focal", "field", "k", "distance", "synonyms", "lexicon"):
        value = getattr(args, key)
        if value is not None:
            doc[key] = value
    if args.include_focal:
        doc["include_focal"] = True
    if "inputs" not in doc or "periods" not in doc:
        raise UsageError("pipeline needs --input and --years (or a --config providing them)")
    try:
        config = PipelineConfig.from_dict(doc)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad pipeline config: {exc}") from exc
    manifest = run_pipeline(config)
    print(f"wrote {len(manifest['outputs'])} files to {config.out}", file=sys.stderr)
    return EXIT_OK


def cmd_synth(args) -> int:
    n = args.n if args.n is not None else 1000
    data, truth = generate_synthetic_corpus(args.seed, n, SynthSpec())
    _emit(data, args.out)
    if args.truth:
        Path(args.truth).write_text(ground_truth_json(truth), encoding="utf-8")
    return EXIT_OK


COMMANDS = {
    "parse": (cmd_parse, "parse WoS exports into canonical corpus JSON"),
    "filter": (cmd_filter, "filter a corpus by years, document type, research area"),
    "freq": (cmd_freq, "keyword frequency table"),
    "cooccur": (cmd_cooccur, "keywords co-occurring with the focal keyword"),
    "topk": (cmd_topk, "top-K co-occurring keywords"),
    "overlap": (cmd_overlap, "overlap percentage between two periods"),
    "ratio": (cmd_ratio, "growth ratio of focal-keyword papers between two periods"),
    "network": (cmd_network, "weighted keyword co-occurrence network JSON"),
    "mst": (cmd_mst, "minimum spanning tree of a network as DOT"),
    "report": (cmd_report, "MST topology coefficients as JSON"),
    "pipeline": (cmd_pipeline, "run the full analysis"),
    "synth": (cmd_synth, "generate a synthetic WoS export"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wosnet", description="Keyword co-occurrence analysis of WoS exports.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (func, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--input", nargs="+", action="extend", default=[], help="input file(s)")
        p.add_argument("--out", help="output path (stdout when omitted; directory for pipeline)")
        p.add_argument("--focal", default=None if name in ("filter", "pipeline") else "complexity")
        p.add_argument("--field", choices=[f.value for f in FieldKind], default=None if name == "pipeline" else "author")
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--years", action="append", help="A-B; repeat for two periods in pipeline")
        p.add_argument("--area", action="append")
        p.add_argument("--doc-type", action="append")
        p.add_argument("--distance", choices=DISTANCE_TRANSFORMS, default=None if name == "pipeline" else "inverse")
        p.add_argument("--synonyms")
        p.add_argument("--lexicon")
        p.add_argument("--seed", type=int, default=1)
        if name == "pipeline":
            p.add_argument("--config", help="pipeline config JSON")
        if name in ("network", "pipeline"):
            p.add_argument("--include-focal", action="store_true")
        if name == "synth":
            p.add_argument("--n", type=int, help="number of records (default 1000)")
            p.add_argument("--truth", help="write the planted ground truth JSON here")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if args.k is not None and args.k < 1:
        parser.error("--k must be >= 1")
    for years in args.years or ():
        try:
            parse_years(years)
        except ValueError as exc:
            parser.error(str(exc))
    if args.command == "filter" and args.years and len(args.years) > 1:
        parser.error("filter takes a single --years")
    if args.command == "filter" and args.years:
        args.years = args.years[0]
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"wosnet {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PipelineError as exc:
        print(f"wosnet {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (WosParseError, SchemaError, InputError, OSError, UnicodeDecodeError) as exc:
        print(f"wosnet {args.command}: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ZeroDivisionError) as exc:
        print(f"wosnet {args.command}: analysis error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface for nlcterm."""

import argparse
import json
import logging
import sys
from contextlib import contextmanager

from nlcterm import __version__
from nlcterm.config import DEFAULT_CONFIG_PATH, ConfigError, load_config, parse_int_list, validate_config
from nlcterm.corpus import CorpusParseError, read_tagged_corpus
from nlcterm.evaluation import evaluate_all, parse_reference_specs
from nlcterm.extraction import extract_candidates
from nlcterm.measures import MeasureId, rank, rank_all
from nlcterm.normalization import stem_word
from nlcterm.pipeline import (
    PipelineError,
    analyse,
    load_references,
    report_json,
    run_pipeline,
    write_eval_matrix,
    write_occurrences,
    write_overlap,
    write_ranking,
    write_source_counts,
    write_stats,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; this tool reserves 2 for data errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        value = 0
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as f:
            yield f


def _read_corpus(args, config):
    try:
        return read_tagged_corpus(args.corpus, config.tagset)
    except CorpusParseError as e:
        raise PipelineError("ingest", f"{args.corpus}: {e}") from None


def cmd_extract(args, config):
    corpus = _read_corpus(args, config)
    occurrences = extract_candidates(corpus, config.l_max, config.workers)
    with _output(args.output) as f:
        write_occurrences(f, occurrences)
    if args.output:
        print(f"Wrote {len(occurrences)} candidate occurrences to {args.output}")
    return EXIT_OK


def cmd_stem(args, config):
    source = open(args.words, "r", encoding="utf-8") if args.words else sys.stdin
    try:
        for line in source:
            word = line.strip()
            print(stem_word(word) if word else "")
    finally:
        if args.words:
            source.close()
    return EXIT_OK


def cmd_stats(args, config):
    analysis = analyse(_read_corpus(args, config), config)
    with _output(args.output) as f:
        write_stats(f, analysis.terms, analysis.nesting, analysis.profile)
    if args.output:
        print(f"Wrote statistics for {len(analysis.terms)} candidates to {args.output}")
    return EXIT_OK


def cmd_rank(args, config):
    analysis = analyse(_read_corpus(args, config), config)
    table = rank(analysis.terms, args.measure, analysis.scorer, length=args.length)
    with _output(args.output) as f:
        write_ranking(f, table, args.top)
    if args.output:
        print(f"Wrote {args.measure} ranking of {len(table)} candidates to {args.output}")
    return EXIT_OK


def cmd_evaluate(args, config):
    refs = load_references(config)
    if not refs:
        print("Error: no reference lists given (use --refs or [evaluation] references)", file=sys.stderr)
        return EXIT_USAGE
    analysis = analyse(_read_corpus(args, config), config)
    measures = [MeasureId.parse(m) for m in config.measures]
    tables = rank_all(analysis.scorer, measures, length=args.length)
    report = evaluate_all(tables, refs, config.ks)

    write_eval_matrix(sys.stdout, report)
    print()
    write_source_counts(sys.stdout, report)
    print()
    write_overlap(sys.stdout, report)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as f:
            json.dump(report_json(report), f, ensure_ascii=False, indent=2)
            f.write("\n")
    return EXIT_OK


def cmd_pipeline(args, config):
    manifest = run_pipeline(config, args.corpus, config.output_dir)
    print(f"Read {manifest.token_count} tokens in {manifest.sentence_count} sentences")
    print(f"Found {manifest.occurrence_count} candidate occurrences, {manifest.candidate_count} after merging variants")
    if manifest.unmerged_variant_pairs:
        print(f"Warning: {manifest.unmerged_variant_pairs} candidate pair(s) differ only by a hamza seat and were not merged")
    print(f"\nWrote {len(manifest.artifacts)} artifacts to {config.output_dir}")
    for name in manifest.artifacts:
        print(f"  {name}")
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        default=DEFAULT_CONFIG_PATH,
        help=f"Path to config file (default: {DEFAULT_CONFIG_PATH})",
    )
    common.add_argument("-v", "--verbose", action="count", default=0, help="Log progress (-vv for debug output)")

    corpus_opts = argparse.ArgumentParser(add_help=False)
    corpus_opts.add_argument("corpus", help="Tagged corpus: one sentence per line of surface/TAG items")
    corpus_opts.add_argument("--l-max", type=int, default=None, help="Longest candidate in words (default: 3)")
    corpus_opts.add_argument("--workers", type=int, default=None, help="Extraction threads (default: 1)")

    scoring_opts = argparse.ArgumentParser(add_help=False)
    scoring_opts.add_argument("--window", type=int, default=None, help="Context window in tokens (default: 5)")

    parser = _ArgumentParser(
        description="Extract and rank Arabic multi-word terms from a POS-tagged corpus"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("extract", parents=[common, corpus_opts], help="List pattern matches as TSV")
    p.add_argument("-o", "--output", help="Write to FILE instead of stdout")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("stem", parents=[common], help="Normalize and light-stem one word per line")
    p.add_argument("words", nargs="?", help="File with one word per line (default: stdin)")
    p.set_defaults(func=cmd_stem)

    p = sub.add_parser("stats", parents=[common, corpus_opts, scoring_opts], help="Per-candidate counts as TSV")
    p.add_argument("-o", "--output", help="Write to FILE instead of stdout")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("rank", parents=[common, corpus_opts, scoring_opts], help="Rank candidates by one measure")
    p.add_argument(
        "--measure",
        choices=[m.value for m in MeasureId],
        default=MeasureId.NLC.value,
        help="Ranking measure (default: nlc)",
    )
    p.add_argument("--top", type=_positive_int, default=None, help="Only the K best candidates")
    p.add_argument("--length", type=_positive_int, default=None, help="Only candidates of this many words")
    p.add_argument("-o", "--output", help="Write to FILE instead of stdout")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("evaluate", parents=[common, corpus_opts, scoring_opts], help="Precision@k against reference lists")
    p.add_argument("--refs", default=None, help="Reference lists as path:label,path:label (first match wins)")
    p.add_argument("--k", default=None, help="Cut-offs, e.g. 100,200,300")
    p.add_argument("--measures", default=None, help="Comma-separated measures (default: all)")
    p.add_argument("--length", type=_positive_int, default=None, help="Only candidates of this many words")
    p.add_argument("--json", default=None, metavar="FILE", help="Also write the report as JSON to FILE (off by default)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("pipeline", parents=[common, corpus_opts, scoring_opts], help="Run every stage and write all reports")
    p.add_argument("-o", "--output", default=None, help="Output directory (default: nlcterm-output)")
    p.add_argument("--measures", default=None, help="Comma-separated measures (default: all)")
    p.add_argument("--refs", default=None, help="Reference lists as path:label,path:label")
    p.add_argument("--k", default=None, help="Cut-offs, e.g. 100,200,300")
    p.set_defaults(func=cmd_pipeline)

    return parser


def _apply_overrides(config, args):
    """CLI flags win over config file values."""
    refs = getattr(args, "refs", None)
    ks = getattr(args, "k", None)
    measures = getattr(args, "measures", None)
    output_dir = getattr(args, "output", None) if args.command == "pipeline" else None
    return config.with_overrides(
        l_max=getattr(args, "l_max", None),
        workers=getattr(args, "workers", None),
        window=getattr(args, "window", None),
        references=tuple(parse_reference_specs(refs)) if refs else None,
        ks=parse_int_list(ks) if ks else None,
        measures=tuple(m.strip() for m in measures.split(",") if m.strip()) if measures else None,
        output_dir=output_dir,
    )


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv

    # First pass: extract --config so we know which config file to load
    pre_parser = argparse.ArgumentParser(add_help=False)
    pre_parser.add_argument("--config", default=DEFAULT_CONFIG_PATH)
    pre_args, _ = pre_parser.parse_known_args(argv)

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    logging.basicConfig(
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        config = _apply_overrides(load_config(pre_args.config), args)
    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DATA

    violations = validate_config(config)
    if violations:
        print("Error: invalid configuration:", file=sys.stderr)
        for violation in violations:
            print(f"  {violation}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return args.func(args, config)
    except PipelineError as e:
        print(f"Error [{e.stage}]: {e.args[0]}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DATA

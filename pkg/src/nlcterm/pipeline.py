"""End-to-end run: ingest, extract, merge, count, rank, evaluate, write artifacts."""

import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from nlcterm.config import validate_config
from nlcterm.corpus import CorpusParseError, read_tagged_corpus
from nlcterm.evaluation import evaluate_all, load_reference
from nlcterm.extraction import extract_candidates
from nlcterm.measures import MeasureId, TermScorer, rank_all
from nlcterm.normalization import find_unmerged_hamza_variants, group_variants
from nlcterm.statistics import build_bigram_stats, build_context_profiles, build_nesting_index

logger = logging.getLogger(__name__)


class PipelineError(RuntimeError):
    """A pipeline stage failed; `stage` names it."""

    def __init__(self, stage, message):
        super().__init__(message)
        self.stage = stage

    def __str__(self):
        return f"[{self.stage}] {self.args[0]}"


def format_float(value):
    """9 significant digits; keeps golden files stable across platforms."""
    if value == 0:
        return "0"
    return format(value, ".9g")


def _round_float(value):
    return float(format_float(value))


# --- analysis ---


@dataclass
class Analysis:
    corpus: object
    occurrences: list
    terms: list
    nesting: object
    profile: object
    bigrams: object
    scorer: TermScorer
    unmerged: list = field(default_factory=list)


def analyse(corpus, config, timings=None):
    """Run every stage up to scoring on an already-parsed corpus."""
    timings = {} if timings is None else timings

    with _stage("extract", timings):
        if corpus.token_count == 0:
            raise PipelineError("extract", "corpus contains no tokens")
        occurrences = extract_candidates(corpus, config.l_max, config.workers)
        if not occurrences:
            raise PipelineError("extract", "no candidate terms match the syntactic patterns")

    with _stage("normalize", timings):
        terms = group_variants(occurrences)
        unmerged = find_unmerged_hamza_variants(terms)

    with _stage("stats", timings):
        nesting = build_nesting_index(terms)
        profile = build_context_profiles(corpus, terms, config.window, nesting)
        try:
            bigrams = build_bigram_stats(corpus)
        except ValueError as e:
            raise PipelineError("stats", str(e)) from None
        scorer = TermScorer(terms, nesting, profile, bigrams, config.weights)

    return Analysis(corpus, occurrences, terms, nesting, profile, bigrams, scorer, unmerged)


@contextmanager
def _stage(name, timings):
    """Time a stage and relabel plain errors with its name."""
    logger.info("stage %s", name)
    start = time.perf_counter()
    try:
        yield
    except PipelineError:
        raise
    except (ValueError, OSError) as e:
        raise PipelineError(name, str(e)) from e
    finally:
        timings[name] = time.perf_counter() - start


# --- writers ---


def write_occurrences(f, occurrences):
    f.write("doc\tsentence\tstart\tlength\tpattern\tsurface\n")
    for occ in occurrences:
        f.write(f"{occ.doc_id}\t{occ.sent_idx}\t{occ.start_idx}\t{occ.length}\t{occ.pattern.value}\t{occ.surface}\n")


def write_stats(f, terms, nesting, profile):
    f.write("key\tlength\tf\tnested_in\tcontext_words\tpatterns\tsurfaces\n")
    for term in terms:
        f.write(
            f"{term.label}\t{term.length}\t{term.frequency}\t{nesting.size(term.key)}\t"
            f"{len(profile.context(term.key))}\t{','.join(term.patterns)}\t{' | '.join(term.surfaces)}\n"
        )


def write_ranking(f, table, top=None):
    if top is not None and top < 1:
        raise ValueError(f"top must be positive, got {top}")
    f.write("rank\tscore\tf\tlength\tkey\tsurface\n")
    for entry in table.entries if top is None else table.top(top):
        term = entry.term
        f.write(
            f"{entry.rank}\t{format_float(entry.score)}\t{term.frequency}\t{term.length}\t"
            f"{term.label}\t{term.sample_surface}\n"
        )


def write_eval_matrix(f, report):
    f.write("measure\t" + "\t".join(f"p@{k}" for k in report.ks) + "\n")
    for measure, row in report.precision.items():
        f.write(measure.value + "\t" + "\t".join(format_float(row[k]) for k in report.ks) + "\n")


def write_source_counts(f, report):
    f.write("source\tmeasure\t" + "\t".join(str(k) for k in report.ks) + "\n")
    for label in report.labels:
        for measure, row in report.source_counts.items():
            f.write(f"{label}\t{measure.value}\t" + "\t".join(str(row[k][label]) for k in report.ks) + "\n")


def write_overlap(f, report):
    f.write("k\tevaluated\tshared\n")
    for k in report.ks:
        f.write(f"{k}\t{report.evaluated[k]}\t{report.shared[k]}\n")


def report_json(report):
    data = report.to_dict()
    data["precision"] = {
        m: {k: _round_float(p) for k, p in row.items()} for m, row in data["precision"].items()
    }
    return data


def _write_json(path, data):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=2)
        f.write("\n")


# --- full run ---


@dataclass
class RunManifest:
    config: dict
    corpus: str
    token_count: int
    sentence_count: int
    occurrence_count: int
    candidate_count: int
    unmerged_variant_pairs: int
    artifacts: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def to_dict(self):
        """Everything but the wall-clock timings."""
        return {
            "config": self.config,
            "corpus": self.corpus,
            "token_count": self.token_count,
            "sentence_count": self.sentence_count,
            "occurrence_count": self.occurrence_count,
            "candidate_count": self.candidate_count,
            "unmerged_variant_pairs": self.unmerged_variant_pairs,
            "artifacts": list(self.artifacts),
        }


def load_references(config):
    return [load_reference(path, label, config.stop_words) for path, label in config.references]


def run_pipeline(config, corpus_path, output_dir=None):
    """Run every stage and write all artifacts; returns the RunManifest.

    Identical inputs and config give byte-identical artifacts, except
    timings.json.
    """
    violations = validate_config(config)
    if violations:
        raise PipelineError("config", "; ".join(violations))
    out = Path(output_dir or config.output_dir)
    timings = {}

    with _stage("ingest", timings):
        try:
            corpus = read_tagged_corpus(corpus_path, config.tagset)
        except CorpusParseError as e:
            raise PipelineError("ingest", f"{corpus_path}: {e}") from None

    analysis = analyse(corpus, config, timings)

    with _stage("rank", timings):
        measures = [MeasureId.parse(m) for m in config.measures]
        tables = rank_all(analysis.scorer, measures)

    report = None
    with _stage("evaluate", timings):
        refs = load_references(config)
        if refs:
            report = evaluate_all(tables, refs, config.ks)

    manifest = RunManifest(
        config=config.snapshot(),
        corpus=str(corpus_path),
        token_count=corpus.token_count,
        sentence_count=corpus.sentence_count,
        occurrence_count=len(analysis.occurrences),
        candidate_count=len(analysis.terms),
        unmerged_variant_pairs=len(analysis.unmerged),
        timings=timings,
    )

    with _stage("write", timings):
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "candidates.tsv", "w", encoding="utf-8") as f:
            write_occurrences(f, analysis.occurrences)
        with open(out / "stats.tsv", "w", encoding="utf-8") as f:
            write_stats(f, analysis.terms, analysis.nesting, analysis.profile)
        manifest.artifacts.extend(["candidates.tsv", "stats.tsv"])
        for measure, table in tables.items():
            name = f"rank.{measure.value}.tsv"
            with open(out / name, "w", encoding="utf-8") as f:
                write_ranking(f, table)
            manifest.artifacts.append(name)
        if report is not None:
            with open(out / "eval.tsv", "w", encoding="utf-8") as f:
                write_eval_matrix(f, report)
            with open(out / "eval.sources.tsv", "w", encoding="utf-8") as f:
                write_source_counts(f, report)
            with open(out / "eval.overlap.tsv", "w", encoding="utf-8") as f:
                write_overlap(f, report)
            _write_json(out / "eval.json", report_json(report))
            manifest.artifacts.extend(["eval.tsv", "eval.sources.tsv", "eval.overlap.tsv", "eval.json"])
        manifest.artifacts.append("manifest.json")
        _write_json(out / "manifest.json", manifest.to_dict())

    _write_json(out / "timings.json", {name: round(seconds, 6) for name, seconds in timings.items()})
    return manifest

"""Precision@k of rankings against stemmed reference term lists."""

import logging
from dataclasses import dataclass, field
from pathlib import Path

from nlcterm.normalization import normalize_graphical, stem_word

logger = logging.getLogger(__name__)

DEFAULT_K = (100, 200, 300)

# dropped from reference entries the way prepositions are dropped from candidate keys
DEFAULT_STOP_WORDS = ("من", "في", "على", "إلى", "عن", "مع", "حتى", "منذ", "ب", "ل", "ك")


@dataclass(frozen=True)
class ReferenceList:
    label: str
    keys: frozenset

    def __len__(self):
        return len(self.keys)


def reference_key(line, stop_words=DEFAULT_STOP_WORDS):
    """Stem key of one reference entry, or None if nothing but stop words remain."""
    stops = {normalize_graphical(word) for word in stop_words}
    key = tuple(stem_word(word) for word in line.split() if normalize_graphical(word) not in stops)
    return key or None


def load_reference(path, label, stop_words=DEFAULT_STOP_WORDS):
    """Read one term per line and stem it with the candidate pipeline.

    Blank lines are skipped and duplicates collapse. Raises ValueError for a
    file with no entries.
    """
    keys = set()
    with open(Path(path), "r", encoding="utf-8-sig") as f:
        for line in f:
            if not line.strip():
                continue
            key = reference_key(line, stop_words)
            if key is not None:
                keys.add(key)
    if not keys:
        raise ValueError(f"reference list {path} is empty")
    logger.debug("loaded %d reference keys from %s as %r", len(keys), path, label)
    return ReferenceList(label=label, keys=frozenset(keys))


def parse_reference_specs(spec):
    """Split `path:label,path:label` into (path, label) pairs.

    The label defaults to the file stem when no `:label` suffix is given.
    """
    pairs = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        path, sep, label = item.rpartition(":")
        if not sep or not path or "/" in label or "\\" in label:
            path, label = item, Path(item).stem
        pairs.append((path, label.strip()))
    return pairs


def match(term, refs):
    """Label of the first reference list holding exactly the term's key, or None."""
    for ref in refs:
        if term.key in ref.keys:
            return ref.label
    return None


def _considered(table, k):
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if k > len(table):
        logger.warning("k=%d exceeds the %d ranked candidates for %s; using %d",
                       k, len(table), table.measure.value, len(table))
        return len(table)
    return k


def matched_at_k(table, refs, k):
    """(RankedTerm, label-or-None) for each of the top-k entries."""
    return [(entry, match(entry.term, refs)) for entry in table.top(_considered(table, k))]


def precision_at_k(table, refs, k):
    considered = _considered(table, k)
    if considered == 0:
        return 0.0
    hits = sum(1 for _, label in matched_at_k(table, refs, considered) if label is not None)
    return hits / considered


@dataclass
class EvalReport:
    """Precision matrix, per-source match counts and cross-measure overlap per k."""

    ks: tuple
    labels: tuple
    precision: dict = field(default_factory=dict)
    matched: dict = field(default_factory=dict)
    source_counts: dict = field(default_factory=dict)
    evaluated: dict = field(default_factory=dict)
    shared: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "k": list(self.ks),
            "sources": list(self.labels),
            "precision": {m.value: {str(k): p for k, p in row.items()} for m, row in self.precision.items()},
            "matched": {m.value: {str(k): c for k, c in row.items()} for m, row in self.matched.items()},
            "source_counts": {
                m.value: {str(k): dict(counts) for k, counts in row.items()}
                for m, row in self.source_counts.items()
            },
            "evaluated_terms": {str(k): v for k, v in self.evaluated.items()},
            "shared_terms": {str(k): v for k, v in self.shared.items()},
        }


def evaluate_all(tables, refs, ks=DEFAULT_K):
    """Evaluate every ranking at every k.

    `evaluated[k]` counts the distinct candidates in the top-k of any measure,
    `shared[k]` those in the top-k of all measures.
    """
    ks = tuple(ks)
    report = EvalReport(ks=ks, labels=tuple(ref.label for ref in refs))
    for measure, table in tables.items():
        report.precision[measure] = {}
        report.matched[measure] = {}
        report.source_counts[measure] = {}
        for k in ks:
            hits = matched_at_k(table, refs, k)
            counts = {ref.label: 0 for ref in refs}
            for _, label in hits:
                if label is not None:
                    counts[label] += 1
            matched = sum(counts.values())
            report.matched[measure][k] = matched
            report.source_counts[measure][k] = counts
            report.precision[measure][k] = matched / len(hits) if hits else 0.0

    for k in ks:
        top_sets = [
            {entry.term.key for entry in table.top(min(k, len(table)))}
            for table in tables.values()
        ]
        report.evaluated[k] = len(set().union(*top_sets)) if top_sets else 0
        report.shared[k] = len(set.intersection(*top_sets)) if top_sets else 0
    return report

"""nlcterm - hybrid Arabic multi-word term extraction ranked by C/NC/NTC/NLC-value."""

from importlib.metadata import version, PackageNotFoundError

try:
    __version__ = version("nlcterm")
except PackageNotFoundError:
    __version__ = "unknown"

from nlcterm.corpus import (
    DEFAULT_TAGSET,
    Corpus,
    CorpusParseError,
    PosCategory,
    TaggedToken,
    TagsetMap,
    format_tagged_corpus,
    map_tagset,
    parse_tagged_corpus,
    read_tagged_corpus,
)
from nlcterm.evaluation import (
    EvalReport,
    ReferenceList,
    evaluate_all,
    load_reference,
    match,
    precision_at_k,
)
from nlcterm.extraction import CandidateOccurrence, Pattern, extract_candidates
from nlcterm.measures import (
    CombinationWeights,
    MeasureId,
    ScoreTable,
    TermScorer,
    c_value,
    llr,
    n_value,
    rank,
    rank_all,
    t_score,
)
from nlcterm.normalization import (
    CandidateTerm,
    candidate_key,
    find_syntactic_variants,
    group_variants,
    light_stem,
    normalize_graphical,
    stem_word,
)
from nlcterm.statistics import (
    build_bigram_stats,
    build_context_profiles,
    build_contingency,
    build_nesting_index,
)

__all__ = [
    "DEFAULT_TAGSET",
    "CandidateOccurrence",
    "CandidateTerm",
    "CombinationWeights",
    "Corpus",
    "CorpusParseError",
    "EvalReport",
    "MeasureId",
    "Pattern",
    "PosCategory",
    "ReferenceList",
    "ScoreTable",
    "TaggedToken",
    "TagsetMap",
    "TermScorer",
    "build_bigram_stats",
    "build_context_profiles",
    "build_contingency",
    "build_nesting_index",
    "c_value",
    "candidate_key",
    "evaluate_all",
    "extract_candidates",
    "find_syntactic_variants",
    "format_tagged_corpus",
    "group_variants",
    "light_stem",
    "llr",
    "load_reference",
    "map_tagset",
    "match",
    "n_value",
    "normalize_graphical",
    "parse_tagged_corpus",
    "precision_at_k",
    "rank",
    "rank_all",
    "read_tagged_corpus",
    "stem_word",
    "t_score",
]

"""Termhood, unithood and context measures, and deterministic rankings.

C-value uses log base 2, LLR and the frequency re-weightings use natural logs.
Negative C-values are kept as they are; rankings only need order. Sums go
through math.fsum so scores do not depend on summation order.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

from nltk.util import ngrams

from nlcterm.statistics import contingency_from_postings, stem_postings

logger = logging.getLogger(__name__)

NEG_INF = float("-inf")


class MeasureId(str, Enum):
    LLR = "llr"
    C = "c"
    NC = "nc"
    NTC = "ntc"
    LLR_C = "llr_c"
    NLC = "nlc"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        try:
            return cls(name.strip().lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown measure {name!r} (expected one of: {choices})") from None


ALL_MEASURES = tuple(MeasureId)


@dataclass(frozen=True)
class CombinationWeights:
    term: float = 0.8
    context: float = 0.2

    def combine(self, term_score, context_score):
        return self.term * term_score + self.context * context_score

    def violations(self):
        if not math.isclose(self.term + self.context, 1.0, abs_tol=1e-9):
            return [f"combination weights must sum to 1, got {self.term} + {self.context}"]
        return []


DEFAULT_WEIGHTS = CombinationWeights()


# --- formulas ---


def c_value(term, nesting, freq_fn=None):
    """log2(|a|) times the frequency, corrected by the mean frequency of its containers.

    `freq_fn` defaults to the raw frequency; TC-value and LC-value pass the
    re-weighted frequencies instead.
    """
    if freq_fn is None:
        freq_fn = _raw_frequency
    weight = math.log2(term.length)
    if not nesting.is_nested(term.key):
        return weight * freq_fn(term)
    containers = nesting.containers_of(term.key)
    g = math.fsum(freq_fn(b) for b in containers) / len(containers)
    return weight * (freq_fn(term) - g)


def _raw_frequency(term):
    return term.frequency


def n_value(term, profile):
    """Sum over context stems b of f_a(b) * t(b) / n."""
    if profile.n <= 0:
        raise ValueError("N-value needs at least one candidate term")
    context = profile.context(term.key)
    return math.fsum(count * profile.t(stem) / profile.n for stem, count in context.items())


def nc_value(c_score, n_score, weights=DEFAULT_WEIGHTS):
    return weights.combine(c_score, n_score)


def ntc_value(tc_score, n_score, weights=DEFAULT_WEIGHTS):
    return weights.combine(tc_score, n_score)


def nlc_value(lc_score, n_score, weights=DEFAULT_WEIGHTS):
    return weights.combine(lc_score, n_score)


def t_score_from_probabilities(p_pair, p_i, p_j, token_count):
    if p_pair <= 0:
        return NEG_INF
    return (p_pair - p_i * p_j) / math.sqrt(p_pair / token_count)


def t_score(w_i, w_j, bigrams):
    """Corpus T-score of an adjacent stem pair; unseen pairs score -inf."""
    return t_score_from_probabilities(bigrams.p_pair(w_i, w_j), bigrams.p(w_i), bigrams.p(w_j), bigrams.token_count)


def reweighted_freq_t(frequency, min_t_score):
    if min_t_score <= 0:
        return float(frequency)
    return frequency * math.log(2 + min_t_score)


def _xlogx(x):
    return x * math.log(x) if x > 0 else 0.0


def llr(table):
    """Log-likelihood ratio of a 2x2 table, with 0 ln 0 = 0."""
    a, b, c, d = table.a, table.b, table.c, table.d
    if table.n <= 0:
        raise ValueError("LLR needs a non-empty contingency table")
    # fsum is order-free, so swapping b and c gives the identical float
    return math.fsum((
        _xlogx(a), _xlogx(b), _xlogx(c), _xlogx(d),
        -_xlogx(a + b), -_xlogx(a + c), -_xlogx(b + d), -_xlogx(c + d),
        _xlogx(table.n),
    ))


def reweighted_freq_llr(frequency, min_llr):
    return frequency * math.log(2 + min_llr)


def lc_value(term, nesting, fl_fn):
    return c_value(term, nesting, fl_fn)


def llr_plus_c_value(term, nesting, fl_fn):
    """Termhood and LLR unithood without context: the same quantity as LC-value."""
    return lc_value(term, nesting, fl_fn)


# --- per-candidate scoring over frozen statistics ---


class TermScorer:
    """Scores candidates against one set of frozen statistics.

    `pair_t_score` and `pair_llr` replace the corpus T-score and term-level
    LLR of a stem pair when given.
    """

    def __init__(self, terms, nesting, profile, bigrams=None, weights=DEFAULT_WEIGHTS,
                 pair_t_score=None, pair_llr=None):
        if bigrams is None and pair_t_score is None:
            raise ValueError("either bigram statistics or pair_t_score is required")
        self.terms = tuple(terms)
        self.nesting = nesting
        self.profile = profile
        self.bigrams = bigrams
        self.weights = weights
        self._postings = stem_postings(self.terms)
        self._pair_t_score = pair_t_score or (lambda w_i, w_j: t_score(w_i, w_j, bigrams))
        self._pair_llr = pair_llr or self._term_llr
        self._min_t = {}
        self._min_llr = {}
        self._n = {}

    @staticmethod
    def constituent_pairs(term):
        pairs = list(ngrams(term.key, 2))
        if not pairs:
            raise ValueError(f"candidate {term.label!r} has no constituent bigram")
        return pairs

    def _term_llr(self, w_i, w_j):
        table = contingency_from_postings(
            self._postings.get(w_i, set()), self._postings.get(w_j, set()), len(self.terms)
        )
        return llr(table)

    def min_t_score(self, term):
        if term.key not in self._min_t:
            self._min_t[term.key] = min(self._pair_t_score(*pair) for pair in self.constituent_pairs(term))
        return self._min_t[term.key]

    def min_llr(self, term):
        if term.key not in self._min_llr:
            self._min_llr[term.key] = min(self._pair_llr(*pair) for pair in self.constituent_pairs(term))
        return self._min_llr[term.key]

    def F(self, term):
        return reweighted_freq_t(term.frequency, self.min_t_score(term))

    def FL(self, term):
        return reweighted_freq_llr(term.frequency, self.min_llr(term))

    def c(self, term):
        return c_value(term, self.nesting)

    def tc(self, term):
        return c_value(term, self.nesting, self.F)

    def lc(self, term):
        return lc_value(term, self.nesting, self.FL)

    def n(self, term):
        if term.key not in self._n:
            self._n[term.key] = n_value(term, self.profile)
        return self._n[term.key]

    def nc(self, term):
        return nc_value(self.c(term), self.n(term), self.weights)

    def ntc(self, term):
        return ntc_value(self.tc(term), self.n(term), self.weights)

    def nlc(self, term):
        return nlc_value(self.lc(term), self.n(term), self.weights)

    def llr_c(self, term):
        return llr_plus_c_value(term, self.nesting, self.FL)

    def score(self, term, measure):
        measure = MeasureId.parse(measure)
        if measure == MeasureId.LLR:
            return self.min_llr(term)
        return getattr(self, measure.value)(term)


# --- ranking ---


@dataclass(frozen=True)
class RankedTerm:
    rank: int
    term: object
    score: float


@dataclass(frozen=True)
class ScoreTable:
    measure: MeasureId
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def top(self, k):
        return self.entries[:k]


def _tie_break(pair):
    term, score = pair
    return (-score, -term.frequency, term.length, term.key)


def rank_by(terms, score_fn, measure, length=None):
    """Rank terms by descending score_fn(term).

    Ties go to the higher frequency, then the shorter key, then the key itself.
    `length` restricts the ranking to keys of that many stems.
    """
    if length is not None:
        terms = [term for term in terms if term.length == length]
    scored = sorted(((term, score_fn(term)) for term in terms), key=_tie_break)
    entries = tuple(RankedTerm(rank=i, term=term, score=score) for i, (term, score) in enumerate(scored, start=1))
    return ScoreTable(measure=measure, entries=entries)


def rank(terms, measure, scorer, length=None):
    measure = MeasureId.parse(measure)
    return rank_by(terms, lambda term: scorer.score(term, measure), measure, length)


def rank_all(scorer, measures=ALL_MEASURES, length=None):
    tables = {}
    for measure in measures:
        measure = MeasureId.parse(measure)
        tables[measure] = rank(scorer.terms, measure, scorer, length)
        logger.debug("ranked %d candidates by %s", len(tables[measure]), measure.value)
    return tables

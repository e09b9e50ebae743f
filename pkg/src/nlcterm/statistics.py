"""Count structures shared by the ranking measures."""

import logging
from collections import defaultdict
from dataclasses import dataclass

from nltk.probability import ConditionalFreqDist, FreqDist
from nltk.util import ngrams

from nlcterm.corpus import PosCategory
from nlcterm.normalization import find_syntactic_variants, stem_word

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 5

CONTEXT_CATEGORIES = frozenset({PosCategory.NOUN, PosCategory.ADJECTIVE, PosCategory.VERB})


# --- nesting ---


@dataclass(frozen=True)
class NestingIndex:
    """For each candidate key, the longer candidates containing it contiguously (T_a)."""

    containers: dict

    def containers_of(self, key):
        return self.containers.get(key, ())

    def size(self, key):
        return len(self.containers_of(key))

    def is_nested(self, key):
        return self.size(key) > 0


def build_nesting_index(terms):
    by_key = {}
    for term in terms:
        if term.key in by_key:
            raise ValueError(f"duplicate candidate key {term.label!r}")
        by_key[term.key] = term

    containers = defaultdict(list)
    for term in terms:
        sub_keys = {
            term.key[start:start + n]
            for n in range(1, term.length)
            for start in range(term.length - n + 1)
        }
        for sub in sub_keys:
            if sub in by_key:
                containers[sub].append(term)

    index = {key: tuple(sorted(found, key=lambda t: t.key)) for key, found in containers.items()}
    for key in by_key:
        index.setdefault(key, ())
    return NestingIndex(index)


# --- context ---


@dataclass(frozen=True)
class ContextProfile:
    """Context-word counts f_a(b), candidate spread t(b) and the candidate total n."""

    counts: ConditionalFreqDist
    spread: FreqDist
    n: int

    def context(self, key):
        """FreqDist of context stems for one candidate (empty if none)."""
        if key in self.counts:
            return self.counts[key]
        return FreqDist()

    def t(self, stem):
        return self.spread[stem]


def _window_stems(sentence, start, length, window):
    left = sentence[max(0, start - window):start]
    right = sentence[start + length:start + length + window]
    for token in (*left, *right):
        if token.pos in CONTEXT_CATEGORIES:
            yield stem_word(token.surface)


def build_context_profiles(corpus, terms, window=DEFAULT_WINDOW, nesting=None):
    """Collect context words within `window` tokens of each occurrence, plus variant additions.

    Words added by a syntactic variant (a longer candidate containing the term)
    count as context, weighted by the variant's frequency.
    """
    if window < 1:
        raise ValueError(f"window must be at least 1, got {window}")
    if nesting is None:
        nesting = build_nesting_index(terms)

    counts = ConditionalFreqDist()
    for term in terms:
        context = counts[term.key]
        for doc_id, sent_idx, start, length in term.positions:
            sentence = corpus.sentence(doc_id, sent_idx)
            for stem in _window_stems(sentence, start, length, window):
                context[stem] += 1
        for variant, added in find_syntactic_variants(term, nesting.containers_of(term.key)):
            for stem in added:
                context[stem] += variant.frequency

    spread = FreqDist()
    for key in counts.conditions():
        for stem in counts[key]:
            spread[stem] += 1

    logger.debug("context profiles: %d candidates, %d distinct context stems", len(terms), len(spread))
    return ContextProfile(counts=counts, spread=spread, n=len(terms))


# --- corpus bigrams ---


@dataclass(frozen=True)
class BigramStats:
    """Stem unigram and adjacent-pair counts; pairs never cross a sentence boundary."""

    unigrams: FreqDist
    pairs: FreqDist
    token_count: int
    pair_total: int

    def p(self, stem):
        return self.unigrams[stem] / self.token_count

    def p_pair(self, w_i, w_j):
        return self.pairs[(w_i, w_j)] / self.pair_total


def build_bigram_stats(corpus):
    """Unigram probabilities over N_w tokens, pair probabilities over N_w - sentences pairs."""
    if corpus.token_count < 2:
        raise ValueError("bigram statistics need a corpus of at least 2 tokens")
    pair_total = corpus.token_count - corpus.sentence_count
    if pair_total < 1:
        raise ValueError("bigram statistics need at least one sentence of 2 or more tokens")

    unigrams = FreqDist()
    pairs = FreqDist()
    for sentence in corpus.sentences:
        stems = [stem_word(token.surface) for token in sentence]
        unigrams.update(stems)
        pairs.update(ngrams(stems, 2))
    return BigramStats(unigrams=unigrams, pairs=pairs, token_count=corpus.token_count, pair_total=pair_total)


# --- term-level contingency ---


@dataclass(frozen=True)
class ContingencyTable:
    a: int
    b: int
    c: int
    d: int

    @property
    def n(self):
        return self.a + self.b + self.c + self.d


def stem_postings(terms):
    """Map each stem to the set of term indices whose key contains it."""
    postings = defaultdict(set)
    for i, term in enumerate(terms):
        for stem in term.key:
            postings[stem].add(i)
    return postings


def contingency_from_postings(with_i, with_j, total):
    both = len(with_i & with_j)
    only_i = len(with_i) - both
    only_j = len(with_j) - both
    return ContingencyTable(a=both, b=only_i, c=only_j, d=total - both - only_i - only_j)


def build_contingency(w_i, w_j, terms):
    """Co-occurrence of two stems counted over candidate terms, not corpus windows."""
    if not terms:
        raise ValueError("contingency table needs at least one candidate term")
    postings = stem_postings(terms)
    return contingency_from_postings(postings.get(w_i, set()), postings.get(w_j, set()), len(terms))

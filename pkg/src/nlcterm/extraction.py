"""Syntactic-pattern candidate extraction over a tagged corpus."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

from nltk.util import ngrams

from nlcterm.corpus import PosCategory

logger = logging.getLogger(__name__)

DEFAULT_L_MAX = 3

_HEAD_OR_MODIFIER = (PosCategory.NOUN, PosCategory.ADJECTIVE)


class Pattern(str, Enum):
    """P1: Noun followed by Noun/Adjective words. P2: Noun Preposition Noun."""

    P1 = "P1"
    P2 = "P2"


@dataclass(frozen=True)
class CandidateOccurrence:
    tokens: tuple
    pattern: Pattern

    @property
    def doc_id(self):
        return self.tokens[0].doc_id

    @property
    def sent_idx(self):
        return self.tokens[0].sent_idx

    @property
    def start_idx(self):
        return self.tokens[0].tok_idx

    @property
    def length(self):
        return len(self.tokens)

    @property
    def surface(self):
        return " ".join(token.surface for token in self.tokens)

    def sort_key(self):
        return (self.doc_id, self.sent_idx, self.start_idx, self.length, self.pattern.value)


def matches_pattern(categories, pattern, l_max=DEFAULT_L_MAX):
    """Check whether a sequence of PosCategory values fits a pattern."""
    categories = tuple(categories)
    if not categories or categories[0] != PosCategory.NOUN:
        return False
    if pattern == Pattern.P1:
        return 2 <= len(categories) <= l_max and all(c in _HEAD_OR_MODIFIER for c in categories[1:])
    if pattern == Pattern.P2:
        return categories == (PosCategory.NOUN, PosCategory.PREPOSITION, PosCategory.NOUN)
    raise ValueError(f"unknown pattern {pattern!r}")


def _sentence_candidates(sentence, l_max):
    found = []
    for n in range(2, l_max + 1):
        for window in ngrams(sentence, n):
            categories = [token.pos for token in window]
            for pattern in Pattern:
                if matches_pattern(categories, pattern, l_max):
                    found.append(CandidateOccurrence(tuple(window), pattern))
    return found


def extract_candidates(corpus, l_max=DEFAULT_L_MAX, workers=1):
    """Return every pattern match in the corpus, nested and overlapping ones included.

    Output is ordered by (doc_id, sent_idx, start_idx, length, pattern) whatever
    the number of worker threads.
    """
    if l_max < 2:
        raise ValueError(f"l_max must be at least 2, got {l_max}")
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")

    if workers == 1:
        per_sentence = [_sentence_candidates(sentence, l_max) for sentence in corpus.sentences]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_sentence = list(pool.map(lambda s: _sentence_candidates(s, l_max), corpus.sentences))

    occurrences = [occ for found in per_sentence for occ in found]
    occurrences.sort(key=CandidateOccurrence.sort_key)
    logger.debug("extracted %d candidate occurrences (l_max=%d)", len(occurrences), l_max)
    return occurrences

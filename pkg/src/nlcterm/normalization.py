"""Arabic graphical normalization, light stemming and variant grouping."""

import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from nlcterm.corpus import PosCategory

logger = logging.getLogger(__name__)

# fathatan..sukun, superscript alef, tatweel
_DIACRITICS = re.compile("[\u064B-\u0652\u0670\u0640]")
_HAMZA_ALEF = re.compile("[أإآ]")
_FINAL_ALEF_MAQSURA = re.compile("ى(?=\\s|$)")
_FINAL_TA_MARBUTA = re.compile("ة(?=\\s|$)")

PREFIXES = ("وال", "فال", "بال", "كال", "ال", "لل", "و")
SUFFIXES = ("ها", "ان", "ات", "ون", "ين", "يه", "ية", "ه", "ي")
MIN_AFTER_PREFIX = 2
MIN_AFTER_SUFFIX = 3

_HAMZA_FORMS = set("ءئؤأإآا")


def normalize_graphical(word):
    """Remove diacritics and tatweel, unify alef seats, fix final ى and ة.

    Non-Arabic text passes through unchanged.
    """
    word = _DIACRITICS.sub("", word)
    word = _HAMZA_ALEF.sub("ا", word)
    word = _FINAL_ALEF_MAQSURA.sub("ي", word)
    return _FINAL_TA_MARBUTA.sub("ه", word)


def light_stem(word):
    """Strip at most one prefix and then at most one suffix, longest match first.

    A prefix is removed only if at least 2 characters remain, a suffix only if
    at least 3 remain. Expects graphically normalized input.
    """
    for prefix in sorted(PREFIXES, key=len, reverse=True):
        if word.startswith(prefix) and len(word) - len(prefix) >= MIN_AFTER_PREFIX:
            word = word[len(prefix):]
            break
    for suffix in sorted(SUFFIXES, key=len, reverse=True):
        if word.endswith(suffix) and len(word) - len(suffix) >= MIN_AFTER_SUFFIX:
            return word[:-len(suffix)]
    return word


def stem_word(surface):
    """Normalize then light-stem one surface word; never returns an empty stem."""
    normalized = normalize_graphical(surface)
    if not normalized:
        return surface
    return light_stem(normalized)


def candidate_key(occurrence):
    """Stem key of an occurrence: prepositions dropped, remaining words stemmed in order."""
    key = tuple(stem_word(token.surface) for token in occurrence.tokens
                if token.pos != PosCategory.PREPOSITION)
    if not key:
        raise RuntimeError(f"occurrence {occurrence.surface!r} has no content words")
    return key


def find_key(container, key):
    """Index of the first contiguous occurrence of `key` inside `container`, or None."""
    n = len(key)
    for start in range(len(container) - n + 1):
        if container[start:start + n] == key:
            return start
    return None


@dataclass(frozen=True)
class CandidateTerm:
    """All occurrences sharing one stem key."""

    key: tuple
    frequency: int
    surfaces: tuple
    patterns: tuple
    positions: tuple

    @property
    def length(self):
        return len(self.key)

    @property
    def label(self):
        return " ".join(self.key)

    @property
    def sample_surface(self):
        return self.surfaces[0]


def group_variants(occurrences):
    """Merge occurrences with equal stem keys into CandidateTerms, sorted by key."""
    grouped = defaultdict(list)
    for occ in occurrences:
        grouped[candidate_key(occ)].append(occ)

    terms = []
    for key in sorted(grouped):
        occs = grouped[key]
        terms.append(CandidateTerm(
            key=key,
            frequency=len(occs),
            surfaces=tuple(sorted({occ.surface for occ in occs})),
            patterns=tuple(sorted({occ.pattern.value for occ in occs})),
            positions=tuple(sorted((occ.doc_id, occ.sent_idx, occ.start_idx, occ.length) for occ in occs)),
        ))
    logger.debug("merged %d occurrences into %d candidates", len(occurrences), len(terms))
    return terms


def find_syntactic_variants(term, terms):
    """Longer candidates containing `term`'s key contiguously, with the stems they add.

    Returns a list of (variant, added_stems) pairs in key order.
    """
    variants = []
    for other in terms:
        if other.length <= term.length:
            continue
        start = find_key(other.key, term.key)
        if start is not None:
            added = other.key[:start] + other.key[start + term.length:]
            variants.append((other, added))
    variants.sort(key=lambda pair: pair[0].key)
    return variants


def find_unmerged_hamza_variants(terms):
    """Pairs of candidates whose keys differ only by a final hamza seat in one stem.

    Such pairs (e.g. هواء / هوائ) are likely morpho-syntactic variants that light
    stemming leaves apart; they are reported, not merged. Candidates are
    bucketed by their key with one hamza-final stem masked, so only keys
    that agree everywhere else are ever compared.
    """
    buckets = defaultdict(list)
    for term in terms:
        for p, stem in enumerate(term.key):
            if stem[-1] in _HAMZA_FORMS:
                masked = term.key[:p] + (stem[:-1],) + term.key[p + 1:]
                buckets[(p, masked)].append(term)

    pairs = []
    for group in buckets.values():
        group.sort(key=lambda t: t.key)
        # members agree everywhere except the final letter of the masked stem
        pairs.extend((a, b) for a, b in combinations(group, 2) if a.key != b.key)
    pairs.sort(key=lambda pair: (pair[0].key, pair[1].key))
    for a, b in pairs:
        logger.info("possible unmerged variants: %s / %s", a.label, b.label)
    return pairs

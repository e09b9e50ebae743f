"""Reading POS-tagged corpora into an in-memory token stream."""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from nltk.tag import tuple2str

logger = logging.getLogger(__name__)


class PosCategory(str, Enum):
    """Coarse part-of-speech categories used by the patterns and context filter."""

    NOUN = "noun"
    ADJECTIVE = "adjective"
    PREPOSITION = "preposition"
    VERB = "verb"
    OTHER = "other"

    @classmethod
    def parse(cls, name):
        """Look up a category by name, case-insensitively."""
        try:
            return cls(name.strip().lower())
        except ValueError:
            choices = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown POS category {name!r} (expected one of: {choices})") from None


@dataclass(frozen=True)
class TagsetMap:
    """Mapping from raw tagger tags to PosCategory, total via `default`.

    Raw tags are matched case-sensitively.
    """

    entries: dict = field(default_factory=dict)
    default: PosCategory = PosCategory.OTHER

    def __getitem__(self, raw):
        return self.entries.get(raw, self.default)


# Penn / Arabic Treebank style tags as emitted by common Arabic taggers
DEFAULT_TAGSET = TagsetMap(
    entries={
        **{tag: PosCategory.NOUN for tag in (
            "NN", "NNS", "NNP", "NNPS", "DTNN", "DTNNS", "DTNNP", "DTNNPS", "NOUN", "NOUN_PROP",
        )},
        **{tag: PosCategory.ADJECTIVE for tag in ("JJ", "JJR", "JJS", "DTJJ", "DTJJR", "ADJ")},
        **{tag: PosCategory.PREPOSITION for tag in ("IN", "PREP")},
        **{tag: PosCategory.VERB for tag in ("VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "VERB")},
    },
    default=PosCategory.OTHER,
)


def map_tagset(raw, tagset):
    """Return the PosCategory for a raw tag, or the tagset default."""
    return tagset[raw]


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    pos: PosCategory
    doc_id: int
    sent_idx: int
    tok_idx: int
    tag: str = field(default="", compare=False)


@dataclass(frozen=True)
class Corpus:
    """Ordered sentences of TaggedTokens. Immutable once built."""

    sentences: tuple = ()
    _by_position: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for sentence in self.sentences:
            if sentence:
                index[(sentence[0].doc_id, sentence[0].sent_idx)] = sentence
        object.__setattr__(self, "_by_position", index)

    @property
    def token_count(self):
        return sum(len(sentence) for sentence in self.sentences)

    @property
    def sentence_count(self):
        return len(self.sentences)

    def sentence(self, doc_id, sent_idx):
        """Return the token tuple of one sentence."""
        return self._by_position[(doc_id, sent_idx)]

    def tokens(self):
        for sentence in self.sentences:
            yield from sentence


class CorpusParseError(ValueError):
    """A tagged item could not be read."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _split_item(item, line_no, column):
    # split on the last slash so surfaces containing '/' survive
    surface, sep, tag = item.rpartition("/")
    if not sep:
        raise CorpusParseError(f"item {item!r} has no '/TAG' part", line_no, column)
    if not surface:
        raise CorpusParseError(f"item {item!r} has an empty surface", line_no, column)
    if not tag:
        raise CorpusParseError(f"item {item!r} has an empty tag", line_no, column)
    return surface, tag


def parse_tagged_corpus(lines, tagset=DEFAULT_TAGSET):
    """Parse one-sentence-per-line `surface/TAG` text into a Corpus.

    `lines` is any iterable of text lines (an open file, a list, or a string
    which is split on newlines). A blank line ends the current document.
    Raises CorpusParseError naming the 1-based line and column of a malformed
    item.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()

    sentences = []
    doc_id = 0
    sent_idx = 0
    pending_break = False
    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if line.startswith("\ufeff"):
            line = line[1:]
        if not line.strip():
            pending_break = bool(sentences)
            continue
        if pending_break:
            doc_id += 1
            sent_idx = 0
            pending_break = False

        tokens = []
        for match in re.finditer(r"\S+", line):
            surface, tag = _split_item(match.group(0), line_no, match.start() + 1)
            tokens.append(TaggedToken(
                surface=surface,
                pos=map_tagset(tag, tagset),
                doc_id=doc_id,
                sent_idx=sent_idx,
                tok_idx=len(tokens),
                tag=tag,
            ))
        sentences.append(tuple(tokens))
        sent_idx += 1

    corpus = Corpus(tuple(sentences))
    logger.debug("parsed %d sentences, %d tokens", corpus.sentence_count, corpus.token_count)
    return corpus


def read_tagged_corpus(path, tagset=DEFAULT_TAGSET):
    """Parse a UTF-8 tagged corpus file."""
    with open(Path(path), "r", encoding="utf-8") as f:
        return parse_tagged_corpus(f, tagset)


def format_tagged_corpus(corpus):
    """Serialize a Corpus back to `surface/TAG` lines.

    Tokens keep the raw tag they were read with; tokens built without one are
    written with their category name. Documents are separated by a blank line.
    """
    lines = []
    previous_doc = None
    for sentence in corpus.sentences:
        doc_id = sentence[0].doc_id
        if previous_doc is not None and doc_id != previous_doc:
            lines.append("")
        previous_doc = doc_id
        lines.append(" ".join(
            tuple2str((token.surface, token.tag or token.pos.value), sep="/") for token in sentence
        ))
    return "\n".join(lines) + ("\n" if lines else "")

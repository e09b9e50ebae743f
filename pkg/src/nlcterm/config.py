"""Pipeline configuration: INI file loading and validation."""

import configparser
from dataclasses import dataclass, field, replace
from pathlib import Path

from nlcterm.corpus import DEFAULT_TAGSET, PosCategory, TagsetMap
from nlcterm.evaluation import DEFAULT_K, DEFAULT_STOP_WORDS, parse_reference_specs
from nlcterm.extraction import DEFAULT_L_MAX
from nlcterm.measures import ALL_MEASURES, CombinationWeights, MeasureId
from nlcterm.statistics import DEFAULT_WINDOW

DEFAULT_CONFIG_PATH = "~/.nlcterm.config"


class ConfigError(ValueError):
    """A config value could not be read."""


@dataclass(frozen=True)
class PipelineConfig:
    tagset: TagsetMap = DEFAULT_TAGSET
    l_max: int = DEFAULT_L_MAX
    workers: int = 1
    window: int = DEFAULT_WINDOW
    weights: CombinationWeights = CombinationWeights()
    measures: tuple = tuple(m.value for m in ALL_MEASURES)
    ks: tuple = DEFAULT_K
    references: tuple = ()
    stop_words: tuple = DEFAULT_STOP_WORDS
    output_dir: str = "nlcterm-output"

    def with_overrides(self, **changes):
        """Copy with the given fields replaced; None values are ignored."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def snapshot(self):
        """JSON-ready view of the settings that shape the results."""
        return {
            "tagset": {
                "entries": {tag: cat.value for tag, cat in sorted(self.tagset.entries.items())},
                "default": self.tagset.default.value,
            },
            "l_max": self.l_max,
            "window": self.window,
            "weights": {"term": self.weights.term, "context": self.weights.context},
            "measures": list(self.measures),
            "k": list(self.ks),
            "references": [{"path": str(path), "label": label} for path, label in self.references],
            "stop_words": list(self.stop_words),
        }


def parse_int_list(text):
    """Parse `100,200,300` into a tuple of ints."""
    try:
        return tuple(int(item) for item in text.split(",") if item.strip())
    except ValueError:
        raise ConfigError(f"expected a comma-separated list of integers, got {text!r}") from None


def _split_list(text):
    return tuple(item.strip() for item in text.split(",") if item.strip())


def _resolve_references(spec, base):
    # relative to the config file, not the working directory
    return tuple(
        (str(Path(ref_path) if Path(ref_path).is_absolute() else base / ref_path), label)
        for ref_path, label in parse_reference_specs(spec)
    )


def _get(parser, section, key, convert):
    if not parser.has_option(section, key):
        return None
    raw = parser.get(section, key)
    try:
        return convert(raw)
    except (ValueError, ConfigError) as e:
        raise ConfigError(f"[{section}] {key}: {e}") from None


def load_config(config_path):
    """Read an INI config file into a PipelineConfig.

    A missing file gives the built-in defaults. Raw tags in `[tagset]` keep
    their case.
    """
    path = Path(config_path).expanduser()
    if not path.is_file():
        return PipelineConfig()

    parser = configparser.ConfigParser(delimiters=("=",), interpolation=None)
    parser.optionxform = str
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as e:
        raise ConfigError(f"{path}: {e}") from None

    default_category = _get(parser, "corpus", "default-category", PosCategory.parse)
    if parser.has_section("tagset"):
        entries = {}
        for tag, name in parser.items("tagset"):
            try:
                entries[tag] = PosCategory.parse(name)
            except ValueError as e:
                raise ConfigError(f"[tagset] {tag}: {e}") from None
        tagset = TagsetMap(entries, default_category or PosCategory.OTHER)
    elif default_category is not None:
        tagset = TagsetMap(dict(DEFAULT_TAGSET.entries), default_category)
    else:
        tagset = DEFAULT_TAGSET

    config = PipelineConfig(tagset=tagset)
    term_weight = _get(parser, "measures", "term-weight", float)
    context_weight = _get(parser, "measures", "context-weight", float)
    if term_weight is not None or context_weight is not None:
        config = replace(config, weights=CombinationWeights(
            term=config.weights.term if term_weight is None else term_weight,
            context=config.weights.context if context_weight is None else context_weight,
        ))

    return config.with_overrides(
        l_max=_get(parser, "extraction", "l-max", int),
        workers=_get(parser, "extraction", "workers", int),
        window=_get(parser, "context", "window", int),
        measures=_get(parser, "measures", "measures", _split_list),
        ks=_get(parser, "evaluation", "k", parse_int_list),
        references=_get(parser, "evaluation", "references", lambda s: _resolve_references(s, path.parent)),
        stop_words=_get(parser, "evaluation", "stop-words", _split_list),
        output_dir=_get(parser, "output", "directory", str),
    )


def validate_config(config):
    """Return a list of invariant violations; empty when the config is usable."""
    violations = list(config.weights.violations())
    if config.l_max < 2:
        violations.append(f"l_max must be at least 2, got {config.l_max}")
    if config.window < 1:
        violations.append(f"context window must be at least 1, got {config.window}")
    if config.workers < 1:
        violations.append(f"workers must be at least 1, got {config.workers}")
    if not config.measures:
        violations.append("at least one measure is required")
    for name in config.measures:
        try:
            MeasureId.parse(name)
        except ValueError as e:
            violations.append(str(e))
    if not config.ks:
        violations.append("at least one k value is required")
    elif any(k <= 0 for k in config.ks):
        violations.append(f"k values must be positive, got {list(config.ks)}")
    elif any(a >= b for a, b in zip(config.ks, config.ks[1:])):
        violations.append(f"k values must be strictly ascending, got {list(config.ks)}")
    return violations

"""Tests for nlcterm.pipeline."""

import io
import json
from pathlib import Path

import pytest

from nlcterm.config import PipelineConfig, load_config
from nlcterm.corpus import read_tagged_corpus
from nlcterm.measures import CombinationWeights, rank
from nlcterm.pipeline import PipelineError, analyse, format_float, run_pipeline, write_ranking

DEMO = Path(__file__).parent.parent / "demo"
CORPUS = DEMO / "corpus.txt"
GOLDEN = Path(__file__).parent / "golden"
MEASURES = ["llr", "c", "nc", "ntc", "llr_c", "nlc"]


def demo_config(**changes):
    return load_config(DEMO / "nlcterm.config").with_overrides(**changes)


def data_rows(path):
    return [line for line in path.read_text(encoding="utf-8").splitlines()[1:] if line]


def artifact_bytes(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir()) if p.name != "timings.json"}


# --- format_float ---


class TestFormatFloat:
    def test_zero(self):
        assert format_float(0.0) == "0"
        assert format_float(-0.0) == "0"

    def test_significant_digits(self):
        assert format_float(1 / 3) == "0.333333333"
        assert format_float(2.54) == "2.54"
        assert format_float(4.0) == "4"
        assert format_float(float("-inf")) == "-inf"


# --- write_ranking ---


class TestWriteRanking:
    @pytest.fixture(scope="class")
    def table(self):
        analysis = analyse(read_tagged_corpus(CORPUS), PipelineConfig())
        return rank(analysis.terms, "c", analysis.scorer)

    def test_top(self, table):
        out = io.StringIO()
        write_ranking(out, table, top=2)
        assert len(out.getvalue().splitlines()) == 3

    def test_without_top_writes_everything(self, table):
        out = io.StringIO()
        write_ranking(out, table)
        assert len(out.getvalue().splitlines()) == len(table) + 1

    @pytest.mark.parametrize("top", [0, -1])
    def test_non_positive_top(self, table, top):
        with pytest.raises(ValueError, match="top must be positive"):
            write_ranking(io.StringIO(), table, top=top)


# --- analyse ---


class TestAnalyse:
    def test_counts(self):
        corpus = read_tagged_corpus(CORPUS)
        timings = {}
        analysis = analyse(corpus, PipelineConfig(), timings)
        assert sum(t.frequency for t in analysis.terms) == len(analysis.occurrences)
        assert analysis.profile.n == len(analysis.terms)
        assert list(timings) == ["extract", "normalize", "stats"]

    def test_flags_hamza_pairs(self):
        analysis = analyse(read_tagged_corpus(CORPUS), PipelineConfig())
        labels = {(a.label, b.label) for a, b in analysis.unmerged}
        assert ("تلوث هواء", "تلوث هوائ") in labels


# --- run_pipeline ---


class TestRunPipeline:
    def test_demo_artifacts(self, tmp_path):
        manifest = run_pipeline(demo_config(), CORPUS, tmp_path / "out")
        out = tmp_path / "out"
        assert [f"rank.{m}.tsv" for m in MEASURES] == [a for a in manifest.artifacts if a.startswith("rank.")]
        for name in manifest.artifacts + ["timings.json"]:
            assert (out / name).is_file()
        assert data_rows(out / "eval.tsv")[0].split("\t")[0] == "llr"
        assert len(data_rows(out / "eval.tsv")) == 6
        assert len(data_rows(out / "eval.sources.tsv")) == 12
        assert manifest.unmerged_variant_pairs >= 1

    def test_manifest_counts_match_files(self, tmp_path):
        out = tmp_path / "out"
        manifest = run_pipeline(demo_config(), CORPUS, out)
        assert len(data_rows(out / "candidates.tsv")) == manifest.occurrence_count
        assert len(data_rows(out / "stats.tsv")) == manifest.candidate_count
        for measure in MEASURES:
            assert len(data_rows(out / f"rank.{measure}.tsv")) == manifest.candidate_count
        data = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
        assert data["token_count"] == manifest.token_count
        assert data["sentence_count"] == 30
        assert data["artifacts"] == manifest.artifacts
        assert "timings" not in data

    def test_byte_identical_runs(self, tmp_path):
        run_pipeline(demo_config(), CORPUS, tmp_path / "first")
        run_pipeline(demo_config(), CORPUS, tmp_path / "second")
        assert artifact_bytes(tmp_path / "first") == artifact_bytes(tmp_path / "second")

    def test_thread_count_does_not_change_artifacts(self, tmp_path):
        run_pipeline(demo_config(workers=1), CORPUS, tmp_path / "one")
        run_pipeline(demo_config(workers=4), CORPUS, tmp_path / "four")
        assert artifact_bytes(tmp_path / "one") == artifact_bytes(tmp_path / "four")

    def test_single_measure(self, tmp_path):
        out = tmp_path / "out"
        run_pipeline(demo_config(measures=("nc",)), CORPUS, out)
        assert sorted(p.name for p in out.glob("rank.*.tsv")) == ["rank.nc.tsv"]

    def test_without_references(self, tmp_path):
        out = tmp_path / "out"
        manifest = run_pipeline(PipelineConfig(), CORPUS, out)
        assert not (out / "eval.tsv").exists()
        assert "eval.tsv" not in manifest.artifacts
        assert manifest.artifacts[-1] == "manifest.json"

    def test_timings(self, tmp_path):
        out = tmp_path / "out"
        run_pipeline(demo_config(), CORPUS, out)
        timings = json.loads((out / "timings.json").read_text(encoding="utf-8"))
        assert list(timings) == ["ingest", "extract", "normalize", "stats", "rank", "evaluate", "write"]
        assert all(seconds >= 0 for seconds in timings.values())

    def test_default_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        run_pipeline(PipelineConfig(output_dir="results"), CORPUS)
        assert (tmp_path / "results" / "stats.tsv").is_file()

    def test_ranking_file_format(self, tmp_path):
        out = tmp_path / "out"
        run_pipeline(demo_config(measures=("c",)), CORPUS, out)
        lines = (out / "rank.c.tsv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "rank\tscore\tf\tlength\tkey\tsurface"
        ranks = [int(line.split("\t")[0]) for line in lines[1:]]
        assert ranks == list(range(1, len(ranks) + 1))


# --- golden artifacts ---


def frozen_form(directory, name):
    # the manifest records absolute demo paths
    text = (directory / name).read_text(encoding="utf-8")
    return text.replace(str(DEMO), "<demo>") if name == "manifest.json" else text


class TestGoldenArtifacts:
    @pytest.fixture(scope="class")
    def demo_run(self, tmp_path_factory):
        out = tmp_path_factory.mktemp("demo-run")
        run_pipeline(demo_config(), CORPUS, out)
        return out

    @pytest.mark.parametrize("name", sorted(p.name for p in GOLDEN.iterdir()))
    def test_matches_frozen_artifact(self, demo_run, name):
        assert frozen_form(demo_run, name) == (GOLDEN / name).read_text(encoding="utf-8")

    def test_every_artifact_is_frozen(self, demo_run):
        produced = sorted(p.name for p in demo_run.iterdir() if p.name != "timings.json")
        assert produced == sorted(p.name for p in GOLDEN.iterdir())


class TestPipelineErrors:
    def test_empty_corpus(self, tmp_path):
        corpus = tmp_path / "empty.txt"
        corpus.write_text("", encoding="utf-8")
        with pytest.raises(PipelineError) as exc_info:
            run_pipeline(PipelineConfig(), corpus, tmp_path / "out")
        assert exc_info.value.stage == "extract"
        assert str(exc_info.value).startswith("[extract] ")

    def test_no_candidates(self, tmp_path):
        corpus = tmp_path / "verbs.txt"
        corpus.write_text("ذهب/VBD كتب/VBD\n", encoding="utf-8")
        with pytest.raises(PipelineError) as exc_info:
            run_pipeline(PipelineConfig(), corpus, tmp_path / "out")
        assert exc_info.value.stage == "extract"

    def test_malformed_corpus(self, tmp_path):
        corpus = tmp_path / "bad.txt"
        corpus.write_text("تلوث الهواء\n", encoding="utf-8")
        with pytest.raises(PipelineError) as exc_info:
            run_pipeline(PipelineConfig(), corpus, tmp_path / "out")
        assert exc_info.value.stage == "ingest"
        assert "line 1, column 1" in str(exc_info.value)

    def test_missing_corpus(self, tmp_path):
        with pytest.raises(PipelineError) as exc_info:
            run_pipeline(PipelineConfig(), tmp_path / "nope.txt", tmp_path / "out")
        assert exc_info.value.stage == "ingest"

    def test_invalid_config(self, tmp_path):
        config = PipelineConfig(weights=CombinationWeights(0.9, 0.2))
        with pytest.raises(PipelineError) as exc_info:
            run_pipeline(config, CORPUS, tmp_path / "out")
        assert exc_info.value.stage == "config"
        assert not (tmp_path / "out").exists()

    def test_missing_reference(self, tmp_path):
        config = PipelineConfig(references=((str(tmp_path / "nope.txt"), "agrovoc"),))
        with pytest.raises(PipelineError) as exc_info:
            run_pipeline(config, CORPUS, tmp_path / "out")
        assert exc_info.value.stage == "evaluate"

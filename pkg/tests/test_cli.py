"""Tests for the hybrid-loss command-line interface."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from hybrid_loss_toolkit import __version__
from hybrid_loss_toolkit.cli import main

LIGHT_LOSS = ["--fft-sizes", "512", "--hops", "50", "--wins", "240"]


def demo_args(target, interference, out):
    return [
        "demo",
        "--target",
        str(target),
        "--interference",
        str(interference),
        "--out",
        str(out),
    ]


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def wav_pair(write_wav, rng):
    target = write_wav("target.wav", 0.3 * np.sin(2 * np.pi * 440 * np.arange(4000) / 16000))
    interference = write_wav("interference.wav", 0.3 * rng.standard_normal(4000))
    return target, interference


class TestMain:
    def test_help_lists_commands(self, runner):
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        for command in ("mix", "score", "grad-check", "demo"):
            assert command in result.output

    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output


class TestMixCommand:
    @pytest.fixture
    def manifest(self, tmp_path, write_wav, rng):
        for name in ("a", "b"):
            write_wav(f"{name}.wav", 0.3 * rng.standard_normal(2000))
        path = tmp_path / "mix.csv"
        path.write_text("target,interference,interference_snr_db\na.wav,b.wav,3\nb.wav,,\n")
        return path

    def test_writes_mixtures_and_provenance(self, runner, manifest, tmp_path):
        out = tmp_path / "out"
        result = runner.invoke(main, ["mix", "--manifest", str(manifest), "--out", str(out)])

        assert result.exit_code == 0, result.output
        assert (out / "mix_00000.wav").is_file()
        assert (out / "mix_00001.wav").is_file()
        assert (out / "provenance.csv").is_file()
        assert "Wrote 2 mixtures" in result.output

    def test_failed_row_sets_exit_status(self, runner, manifest, tmp_path):
        with open(manifest, "a") as f:
            f.write("a.wav,missing.wav,0\n")

        out = tmp_path / "out"
        result = runner.invoke(main, ["mix", "--manifest", str(manifest), "--out", str(out)])

        assert result.exit_code == 1
        assert "Line 4" in result.output
        assert (out / "provenance.csv").is_file()

    def test_missing_manifest(self, runner, tmp_path):
        result = runner.invoke(
            main, ["mix", "--manifest", str(tmp_path / "nope.csv"), "--out", str(tmp_path)]
        )
        assert result.exit_code == 1
        assert "Manifest not found" in result.output


class TestScoreCommand:
    @pytest.fixture
    def manifest(self, tmp_path, wav_pair):
        path = tmp_path / "pairs.tsv"
        path.write_text("target.wav\ttarget.wav\thello world\thello word\n")
        return path

    def test_csv_report(self, runner, manifest, tmp_path):
        out = tmp_path / "scores.csv"
        result = runner.invoke(main, ["score", "--manifest", str(manifest), "--out", str(out)])

        assert result.exit_code == 0, result.output
        lines = out.read_text().splitlines()
        assert lines[0].startswith("utterance,reference,estimate")
        assert lines[-1].startswith("mean,")

    def test_json_report(self, runner, manifest, tmp_path):
        out = tmp_path / "scores.json"
        result = runner.invoke(
            main,
            ["score", "--manifest", str(manifest), "--out", str(out), "--format", "json"],
        )

        assert result.exit_code == 0, result.output
        document = json.loads(out.read_text())
        assert document["rows"][0]["wer"] == pytest.approx(0.5)

    def test_unknown_metric(self, runner, manifest, tmp_path):
        args = ["score", "--manifest", str(manifest), "--out", str(tmp_path / "s.csv")]
        result = runner.invoke(main, [*args, "--metrics", "si_sdr,pesq"])
        assert result.exit_code == 2

    def test_failed_row_sets_exit_status(self, runner, manifest, tmp_path):
        with open(manifest, "a") as f:
            f.write("target.wav\tmissing.wav\n")

        result = runner.invoke(
            main, ["score", "--manifest", str(manifest), "--out", str(tmp_path / "s.csv")]
        )

        assert result.exit_code == 1
        assert "Line 2" in result.output


class TestGradCheckCommand:
    def test_light_suite_passes(self, runner):
        result = runner.invoke(
            main, ["grad-check", "--length", "1024", "--coordinates", "3", *LIGHT_LOSS]
        )
        assert result.exit_code == 0, result.output
        assert "All 5 checks passed" in result.output

    def test_impossible_tolerance_fails(self, runner):
        args = ["grad-check", "--length", "1024", "--coordinates", "3", *LIGHT_LOSS]
        result = runner.invoke(main, [*args, "--tolerance", "1e-12"])
        assert result.exit_code == 1

    def test_partial_resolution_lists(self, runner):
        result = runner.invoke(main, ["grad-check", "--fft-sizes", "512"])
        assert result.exit_code == 2
        assert "must be given together" in result.output

    def test_short_length(self, runner):
        result = runner.invoke(main, ["grad-check", "--length", "100", *LIGHT_LOSS])
        assert result.exit_code == 1
        assert "length must be" in result.output


class TestDemoCommand:
    def test_wav_pair_run(self, runner, wav_pair, tmp_path):
        target, interference = wav_pair
        out = tmp_path / "report.json"
        curves = tmp_path / "curves.csv"
        markdown = tmp_path / "report.md"

        result = runner.invoke(
            main,
            [
                *demo_args(target, interference, out),
                "--steps",
                "2",
                "--curves",
                str(curves),
                "--markdown",
                str(markdown),
            ],
        )

        assert result.exit_code == 0, result.output
        report = json.loads(out.read_text())
        assert list(report["arms"]) == ["si_sdr_only", "hybrid"]
        assert report["steps"] == 2
        assert len(curves.read_text().splitlines()) == 3
        assert "target.wav vs interference.wav" in markdown.read_text()

    def test_snr_sweep(self, runner, wav_pair, tmp_path):
        target, interference = wav_pair
        out = tmp_path / "sweep.json"

        result = runner.invoke(
            main,
            [*demo_args(target, interference, out), "--snr-sweep=-5,5", "--steps", "1"],
        )

        assert result.exit_code == 0, result.output
        sweep = json.loads(out.read_text())["sweep"]
        assert [entry["snr_db"] for entry in sweep] == [-5.0, 5.0]

    def test_config_override(self, runner, wav_pair, tmp_path):
        target, interference = wav_pair
        config = tmp_path / "override.yaml"
        config.write_text("demo:\n  steps: 1\n  learning_rate: 0.5\n")
        out = tmp_path / "report.json"

        result = runner.invoke(
            main,
            [*demo_args(target, interference, out), "--config", str(config)],
        )

        assert result.exit_code == 0, result.output
        report = json.loads(out.read_text())
        assert report["steps"] == 1
        assert report["learning_rate"] == 0.5

    def test_zero_steps_is_a_usage_error(self, runner, tmp_path):
        result = runner.invoke(main, ["demo", "--steps", "0", "--out", str(tmp_path / "r.json")])
        assert result.exit_code == 2

    def test_target_without_interference(self, runner, wav_pair, tmp_path):
        target, _ = wav_pair
        result = runner.invoke(
            main, ["demo", "--target", str(target), "--out", str(tmp_path / "r.json")]
        )
        assert result.exit_code == 2

    def test_unequal_lengths(self, runner, write_wav, tmp_path):
        target = write_wav("t.wav", np.ones(4000))
        interference = write_wav("i.wav", np.ones(3000))
        result = runner.invoke(main, demo_args(target, interference, tmp_path / "r.json"))
        assert result.exit_code == 1
        assert "equal lengths" in result.output

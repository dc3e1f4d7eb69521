"""Tests for the mask optimizer, the A/B experiment and its reports."""

import csv
import json
from datetime import datetime

import numpy as np
import pytest

from hybrid_loss_toolkit.demo import (
    DEMO_CONFIG,
    apply_mask,
    build_synthetic_scenario,
    initial_mask,
    mask_chain_gradient,
    mask_frame_count,
    mask_optimizer,
    masked_spectrogram,
    mixture_spectrogram,
    optimize_mask,
    padded_length,
    render_markdown,
    run_ab_experiment,
    run_snr_sweep,
    scenario_from_wavs,
    sweep_to_dict,
    write_loss_curves_csv,
    write_report_json,
)
from hybrid_loss_toolkit.errors import DivergenceError, LengthMismatchError, ShapeMismatchError
from hybrid_loss_toolkit.losses import si_sdr_loss
from hybrid_loss_toolkit.losses.base import LossFunction
from hybrid_loss_toolkit.mixsim import make_mixture
from hybrid_loss_toolkit.models import (
    AbReport,
    ArmReport,
    HybridConfig,
    LossKind,
    LossResult,
    MaskParams,
)

SR = 16000


@pytest.fixture
def mixture(tone, random_wave):
    return tone(440, 4000).with_samples(tone(440, 4000).samples + 0.2 * random_wave.samples[:4000])


class TestMaskGeometry:
    def test_padded_length(self):
        assert padded_length(500, DEMO_CONFIG) == 1800
        assert padded_length(600, DEMO_CONFIG) == 1800
        assert padded_length(1000, DEMO_CONFIG) == 2280
        assert padded_length(1080, DEMO_CONFIG) == 2280

    def test_padding_leaves_a_window_on_each_side(self):
        for n in (1, 599, 600, 4000, 32000):
            total = padded_length(n, DEMO_CONFIG)
            assert total >= n + 2 * DEMO_CONFIG.win_length
            assert (total - DEMO_CONFIG.win_length) % DEMO_CONFIG.hop == 0
            assert total - DEMO_CONFIG.hop < n + 2 * DEMO_CONFIG.win_length

    def test_frame_count(self):
        assert mask_frame_count(1000, DEMO_CONFIG) == 15
        assert mask_frame_count(100, DEMO_CONFIG) == 7

    def test_initial_mask_is_half(self, mixture):
        mask = initial_mask(mixture)
        assert mask.logits.shape == (mask_frame_count(len(mixture), DEMO_CONFIG), 513)
        assert np.all(mask.mask == 0.5)

    def test_initial_jitter_is_seeded(self, mixture):
        a = initial_mask(mixture, seed=3, init_noise=0.1)
        b = initial_mask(mixture, seed=3, init_noise=0.1)
        np.testing.assert_array_equal(a.logits, b.logits)
        assert np.std(a.logits) == pytest.approx(0.1, rel=0.1)


class TestApplyMask:
    def _constant(self, mixture, value):
        return MaskParams.constant(mask_frame_count(len(mixture), DEMO_CONFIG), DEMO_CONFIG, value)

    def test_open_mask_reproduces_the_mixture(self, mixture):
        extracted = apply_mask(mixture, self._constant(mixture, 40.0))

        assert len(extracted) == len(mixture)
        np.testing.assert_allclose(extracted.samples, mixture.samples, atol=1e-9)

    def test_closed_mask_silences_the_mixture(self, mixture):
        extracted = apply_mask(mixture, self._constant(mixture, -40.0))
        assert np.max(np.abs(extracted.samples)) < 1e-12

    def test_half_mask_halves_a_tone(self, tone):
        wave = tone(500, 3000)
        extracted = apply_mask(wave, self._constant(wave, 0.0))

        np.testing.assert_allclose(extracted.samples, 0.5 * wave.samples, atol=1e-10)

    def test_random_mask_never_adds_energy(self, mixture):
        # Every sample, edges included, sees the full overlap-added window.
        rng = np.random.default_rng(7)
        n_frames = mask_frame_count(len(mixture), DEMO_CONFIG)
        for _ in range(20):
            logits = 8.0 * rng.standard_normal((n_frames, 513))
            extracted = apply_mask(mixture, MaskParams(logits, DEMO_CONFIG))
            assert extracted.energy <= mixture.energy * (1 + 1e-9)

    def test_masked_magnitude_never_exceeds_the_mixture(self, mixture, rng):
        n_frames = mask_frame_count(len(mixture), DEMO_CONFIG)
        mask = MaskParams(rng.standard_normal((n_frames, 513)), DEMO_CONFIG)

        masked = np.abs(masked_spectrogram(mixture, mask).data)
        original = np.abs(mixture_spectrogram(mixture).data)

        assert np.all(masked <= original)

    def test_shape_mismatch(self, mixture):
        mask = MaskParams.constant(2, DEMO_CONFIG)
        with pytest.raises(ShapeMismatchError):
            apply_mask(mixture, mask)


class TestMaskChainGradient:
    def test_matches_central_differences(self, mixture, tone, rng):
        target = tone(440, len(mixture))
        spec = mixture_spectrogram(mixture)
        logits = rng.standard_normal((spec.n_frames, 513))

        def objective(point):
            return si_sdr_loss(apply_mask(mixture, MaskParams(point, DEMO_CONFIG)), target).value

        upstream = si_sdr_loss(apply_mask(mixture, MaskParams(logits, DEMO_CONFIG)), target)
        analytic = mask_chain_gradient(spec, MaskParams(logits, DEMO_CONFIG), upstream.gradient)

        step = 1e-4
        coords = rng.choice(logits.size, size=10, replace=False)
        numeric = []
        for i in coords:
            plus, minus = logits.copy(), logits.copy()
            plus.flat[i] += step
            minus.flat[i] -= step
            numeric.append((objective(plus) - objective(minus)) / (2 * step))
        numeric = np.array(numeric)
        expected = analytic.ravel()[coords]

        scale = max(np.max(np.abs(numeric)), np.max(np.abs(expected)))
        assert np.max(np.abs(numeric - expected)) / scale <= 1e-4


class TestOptimizeMask:
    def test_rejects_bad_arguments(self, mixture):
        with pytest.raises(ValueError, match="steps"):
            optimize_mask(mixture, mixture, LossKind.SI_SDR_ONLY, 0, 1.0)
        with pytest.raises(ValueError, match="learning_rate"):
            optimize_mask(mixture, mixture, LossKind.SI_SDR_ONLY, 1, 0.0)
        with pytest.raises(LengthMismatchError):
            optimize_mask(
                mixture, mixture.with_samples(mixture.samples[:-1]), LossKind.SI_SDR_ONLY, 1, 1.0
            )

    @pytest.mark.parametrize("kind", list(LossKind))
    def test_target_equal_to_mixture(self, tone, kind):
        wave = tone(440, 4000)
        extracted, report = optimize_mask(wave, wave, kind, 200, 5.0)

        assert len(extracted) == len(wave)
        assert report.final_si_sdr_db >= 30.0
        assert report.steps == 200

    def test_is_deterministic(self, mixture, tone):
        target = tone(440, len(mixture))
        _, first = optimize_mask(mixture, target, LossKind.SI_SDR_ONLY, 4, 5.0, seed=1)
        _, second = optimize_mask(mixture, target, LossKind.SI_SDR_ONLY, 4, 5.0, seed=1)
        assert first.loss_curve == second.loss_curve
        assert first.final_si_sdr_db == second.final_si_sdr_db

    def test_loss_decreases(self, mixture, tone):
        target = tone(440, len(mixture))
        _, report = optimize_mask(mixture, target, LossKind.SI_SDR_ONLY, 20, 0.5)
        assert report.loss_curve[-1] < report.loss_curve[0]
        assert np.all(np.diff(report.loss_curve) <= 0)
        assert report.final_si_sdr_db > report.mixture_si_sdr_db

    def test_infinite_step_diverges(self, mixture, tone):
        target = tone(440, len(mixture))
        with pytest.raises(DivergenceError):
            optimize_mask(mixture, target, LossKind.SI_SDR_ONLY, 2, float("inf"))

    def test_non_finite_loss_diverges(self, mixture, tone, monkeypatch):
        class NanLoss(LossFunction):
            name = "nan"

            def compute(self, estimate, reference):
                return LossResult(value=float("nan"), gradient=np.zeros(len(estimate)))

        monkeypatch.setattr(mask_optimizer, "build_loss", lambda kind, config: NanLoss())
        target = tone(440, len(mixture))

        with pytest.raises(DivergenceError, match="non-finite"):
            optimize_mask(mixture, target, LossKind.SI_SDR_ONLY, 2, 1.0)

    def test_stationary_mask_fills_the_curve(self, tone):
        wave = tone(440, 4000)
        _, report = optimize_mask(wave, wave, LossKind.SI_SDR_ONLY, 30, 5.0)

        assert len(report.loss_curve) == 30
        assert np.all(np.diff(report.loss_curve) <= 0)


@pytest.fixture(scope="module")
def default_report():
    """The default synthetic A/B run: 2 s at 0 dB, 200 steps, learning rate 5."""
    return run_ab_experiment(build_synthetic_scenario(), steps=200, learning_rate=5.0, seed=0)


class TestAbExperiment:
    def test_both_arms_improve_on_the_mixture(self, default_report):
        for arm in default_report.arms.values():
            assert arm.si_sdr_improvement_db >= 5.0
            assert arm.loss_curve[-1] < arm.loss_curve[0]

    def test_arms_reach_similar_si_sdr(self, default_report):
        arms = default_report.arms
        assert abs(arms["si_sdr_only"].final_si_sdr_db - arms["hybrid"].final_si_sdr_db) <= 1.0

    @pytest.mark.parametrize("name", ["si_sdr_only", "hybrid"])
    def test_loss_curve_keeps_descending(self, default_report, name):
        curve = np.array(default_report.arms[name].loss_curve)

        assert np.all(np.diff(curve) <= 0)
        for k in range(50, len(curve) - 20):
            assert curve[k + 20] <= curve[k] + 0.01 * abs(curve[k])

    def test_hybrid_arm_over_suppresses_less(self, default_report):
        arms = default_report.arms
        assert arms["hybrid"].mae_over <= arms["si_sdr_only"].mae_over
        assert default_report.over_suppression_reduction >= 0.0

    def test_report_layout(self, default_report):
        assert list(default_report.arms) == ["si_sdr_only", "hybrid"]
        assert all(arm.steps == 200 for arm in default_report.arms.values())
        assert default_report.config == DEMO_CONFIG

    def test_zero_gamma_arms_are_identical(self):
        scenario = build_synthetic_scenario(duration_s=0.25)
        report = run_ab_experiment(
            scenario, steps=3, learning_rate=5.0, hybrid_config=HybridConfig(gamma=0.0)
        )
        si_sdr_arm, hybrid_arm = report.arms["si_sdr_only"], report.arms["hybrid"]

        assert si_sdr_arm.loss_curve == hybrid_arm.loss_curve
        assert si_sdr_arm.mae_over == hybrid_arm.mae_over
        assert report.over_suppression_reduction == 0.0


class TestScenarios:
    def test_synthetic_scenario(self):
        scenario = build_synthetic_scenario(duration_s=0.5, sample_rate=8000, snr_db=3.0)
        assert len(scenario.target) == 4000
        assert scenario.target.sample_rate == 8000
        assert scenario.interference_snr_db == [3.0]
        assert scenario.target_id.startswith("synthetic:")

    def test_synthetic_mixture_has_the_requested_snr(self):
        mixed = make_mixture(build_synthetic_scenario(duration_s=0.5, snr_db=-2.0))
        component = mixed.scaled_components[0]
        assert 10 * np.log10(mixed.target.energy / component.energy) == pytest.approx(-2.0)

    def test_invalid_duration(self):
        with pytest.raises(ValueError):
            build_synthetic_scenario(duration_s=0.0)

    def test_from_wavs(self, write_wav, rng):
        target = write_wav("t.wav", 0.3 * rng.standard_normal(2000))
        interference = write_wav("i.wav", 0.3 * rng.standard_normal(2000))

        scenario = scenario_from_wavs(target, interference, snr_db=5.0)

        assert scenario.target_id == str(target)
        assert scenario.interference_snr_db == [5.0]

    def test_from_wavs_length_mismatch(self, write_wav, rng):
        target = write_wav("t.wav", rng.standard_normal(2000))
        interference = write_wav("i.wav", rng.standard_normal(1999))
        with pytest.raises(LengthMismatchError):
            scenario_from_wavs(target, interference)

    def test_from_wavs_rate_mismatch(self, write_wav, rng):
        target = write_wav("t.wav", rng.standard_normal(2000))
        interference = write_wav("i.wav", rng.standard_normal(2000), sample_rate=8000)
        with pytest.raises(ValueError, match="Sample rates"):
            scenario_from_wavs(target, interference)

    def test_snr_sweep(self):
        scenario = build_synthetic_scenario(duration_s=0.25)
        results = run_snr_sweep(
            scenario.target, scenario.interferences[0], [-5.0, 5.0], steps=2, learning_rate=5.0
        )

        assert [snr for snr, _ in results] == [-5.0, 5.0]
        low, high = (report.arms["si_sdr_only"].mixture_si_sdr_db for _, report in results)
        assert high > low


@pytest.fixture
def small_report():
    def arm(name, offset):
        return ArmReport(
            loss_name=name,
            final_si_sdr_db=10.0 + offset,
            mae_over=0.02 - offset / 100,
            mae_under=0.01,
            loss_curve=[1.0, 0.5],
            mixture_si_sdr_db=0.5,
        )

    return AbReport(
        arms={"si_sdr_only": arm("si_sdr_only", 0.0), "hybrid": arm("hybrid", 1.0)},
        steps=2,
        learning_rate=5.0,
        seed=0,
        config=DEMO_CONFIG,
    )


class TestReports:
    def test_over_suppression_reduction(self, small_report):
        assert small_report.over_suppression_reduction == pytest.approx(0.5)

    def test_json_fields(self, small_report, tmp_path, golden):
        path = tmp_path / "report.json"
        write_report_json(small_report, path)

        document = json.loads(path.read_text(encoding="utf-8"))

        assert list(document) == golden("ab_report_fields.txt")
        assert list(document["arms"]["hybrid"]) == golden("arm_fields.txt")
        assert document["stft"] == {"fft_size": 1024, "hop": 120, "win_length": 600}
        assert document["arms"]["hybrid"]["si_sdr_improvement_db"] == pytest.approx(10.5)

    def test_sweep_omits_curves(self, small_report):
        document = sweep_to_dict([(0.0, small_report)])
        entry = document["sweep"][0]
        assert entry["snr_db"] == 0.0
        assert "loss_curve" not in entry["arms"]["hybrid"]

    def test_loss_curves_csv(self, small_report, tmp_path):
        path = tmp_path / "curves.csv"
        write_loss_curves_csv(small_report, path)

        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))

        assert rows[0] == ["step", "si_sdr_only", "hybrid"]
        assert rows[1] == ["0", "1.00000000", "1.00000000"]
        assert len(rows) == 3

    def test_markdown(self, small_report):
        text = render_markdown(small_report, "unit", created=datetime(2024, 1, 2, 3, 4, 5))

        assert text.startswith("---\ntype: hybrid-loss-ab-report\n")
        assert "created: 2024-01-02T03:04:05" in text
        assert "| hybrid | 11.00 | 10.50 | 0.01000 | 0.01000 | 0.5000 |" in text
        assert "50.0%" in text

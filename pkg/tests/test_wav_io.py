"""Tests for WAV reading and writing."""

import numpy as np
import pytest
from scipy.io import wavfile

from hybrid_loss_toolkit.errors import (
    UnsupportedEncodingError,
    WavFileNotFoundError,
    WavFormatError,
)
from hybrid_loss_toolkit.models import WavEncoding, Waveform
from hybrid_loss_toolkit.signal import load_wav, save_wav

ONE_LSB = 1.0 / 32768


def test_load_pcm16_scales_to_unit_range(tmp_path):
    path = tmp_path / "pcm.wav"
    wavfile.write(path, 16000, np.array([0, 16384, -16384, 0], dtype=np.int16))

    wave = load_wav(path)

    assert wave.sample_rate == 16000
    np.testing.assert_allclose(wave.samples, [0.0, 0.5, -0.5, 0.0], atol=ONE_LSB)


def test_load_stereo_averages_channels(tmp_path):
    path = tmp_path / "stereo.wav"
    data = np.stack([np.ones(8), np.zeros(8)], axis=1).astype(np.float32)
    wavfile.write(path, 8000, data)

    wave = load_wav(path)

    assert len(wave) == 8
    np.testing.assert_array_equal(wave.samples, np.full(8, 0.5))


def test_load_missing_file(tmp_path):
    with pytest.raises(WavFileNotFoundError):
        load_wav(tmp_path / "nope.wav")


def test_missing_file_is_a_file_not_found_error(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_wav(tmp_path / "nope.wav")


def test_load_malformed_file(tmp_path):
    path = tmp_path / "text.wav"
    path.write_bytes(b"this is not a riff file at all")

    with pytest.raises(WavFormatError):
        load_wav(path)


def test_load_rejects_int32_samples(tmp_path):
    path = tmp_path / "int32.wav"
    wavfile.write(path, 16000, np.array([0, 1, -1, 2], dtype=np.int32))

    with pytest.raises(UnsupportedEncodingError):
        load_wav(path)


def test_float32_round_trip_is_bit_identical(tmp_path, rng):
    samples = rng.uniform(-1, 1, 1000).astype(np.float32).astype(np.float64)
    path = tmp_path / "float.wav"

    clipped = save_wav(Waveform(samples, 16000), path, WavEncoding.FLOAT32)

    assert clipped == 0
    np.testing.assert_array_equal(load_wav(path).samples, samples)


def test_pcm16_round_trip_within_one_lsb(tmp_path):
    path = tmp_path / "half.wav"
    save_wav(Waveform(np.array([0.5, -0.25, 0.0]), 16000), path, WavEncoding.PCM16)

    np.testing.assert_allclose(load_wav(path).samples, [0.5, -0.25, 0.0], atol=ONE_LSB)


def test_pcm16_clips_and_counts(tmp_path):
    path = tmp_path / "clip.wav"

    clipped = save_wav(Waveform(np.array([1.5, 0.0, -0.5]), 16000), path, WavEncoding.PCM16)

    assert clipped == 1
    loaded = load_wav(path).samples
    assert loaded[0] == pytest.approx(1.0, abs=ONE_LSB)
    assert loaded[2] == pytest.approx(-0.5, abs=ONE_LSB)


def test_save_preserves_sample_rate(tmp_path):
    path = tmp_path / "rate.wav"
    save_wav(Waveform(np.zeros(10), 22050), path)

    assert load_wav(path).sample_rate == 22050


def test_waveform_rejects_non_finite_samples():
    with pytest.raises(ValueError, match="finite"):
        Waveform(np.array([0.0, np.nan]), 16000)


def test_waveform_rejects_bad_rate():
    with pytest.raises(ValueError, match="sample_rate"):
        Waveform(np.zeros(4), 0)

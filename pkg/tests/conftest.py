"""Shared fixtures for the hybrid loss toolkit tests."""

from pathlib import Path
from typing import Callable, List

import numpy as np
import pytest
from scipy.io import wavfile

from hybrid_loss_toolkit.models import Waveform

SAMPLE_RATE = 16000
GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so every test sees the same signals."""
    return np.random.default_rng(1234)


@pytest.fixture
def random_wave(rng: np.random.Generator) -> Waveform:
    return Waveform(0.5 * rng.standard_normal(4096), SAMPLE_RATE)


@pytest.fixture
def tone() -> Callable[..., Waveform]:
    """Factory for sinusoids: tone(freq_hz, n_samples, amplitude=0.5, phase=0.0)."""

    def make(
        freq_hz: float, n_samples: int, amplitude: float = 0.5, phase: float = 0.0
    ) -> Waveform:
        t = np.arange(n_samples) / SAMPLE_RATE
        return Waveform(amplitude * np.sin(2 * np.pi * freq_hz * t + phase), SAMPLE_RATE)

    return make


@pytest.fixture
def write_wav(tmp_path: Path) -> Callable[..., Path]:
    """Write samples as a float-32 WAV under tmp_path and return the path."""

    def write(name: str, samples: np.ndarray, sample_rate: int = SAMPLE_RATE) -> Path:
        path = tmp_path / name
        path.parent.mkdir(parents=True, exist_ok=True)
        wavfile.write(path, sample_rate, np.asarray(samples, dtype=np.float32))
        return path

    return write


def read_golden(name: str) -> List[str]:
    """Non-empty lines of a golden schema file."""
    lines = (GOLDEN_DIR / name).read_text(encoding="utf-8").splitlines()
    return [line.strip() for line in lines if line.strip()]


@pytest.fixture
def golden() -> Callable[[str], List[str]]:
    return read_golden

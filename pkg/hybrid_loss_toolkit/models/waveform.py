"""Waveform model and WAV encoding enum."""

from dataclasses import dataclass
from enum import Enum

import numpy as np


class WavEncoding(Enum):
    """Sample encodings supported by the WAV reader and writer."""

    PCM16 = "pcm16"
    FLOAT32 = "float32"


@dataclass(frozen=True)
class Waveform:
    """A mono sampled signal.

    Samples are stored as a read-only float64 array so a waveform can be shared
    between threads and callers without defensive copies.
    """

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self) -> None:
        """Normalize samples to a read-only 1-D float64 array and validate."""
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError(f"Waveform samples must be 1-D, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("Waveform samples must be finite (no NaN/Inf)")
        if int(self.sample_rate) <= 0:
            raise ValueError(f"Invalid sample_rate {self.sample_rate} (must be positive)")

        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    def __len__(self) -> int:
        return int(self.samples.shape[0])

    @property
    def duration(self) -> float:
        """Duration in seconds."""
        return len(self) / self.sample_rate

    @property
    def energy(self) -> float:
        """Sum of squared samples."""
        return float(np.dot(self.samples, self.samples))

    def with_samples(self, samples: np.ndarray) -> "Waveform":
        """Return a new waveform at the same rate holding ``samples``."""
        return Waveform(samples=samples, sample_rate=self.sample_rate)

    def scaled(self, gain: float) -> "Waveform":
        """Return the waveform multiplied by ``gain``."""
        return self.with_samples(self.samples * gain)
